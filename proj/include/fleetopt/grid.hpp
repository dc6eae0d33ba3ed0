#ifndef FLEETOPT_GRID_HPP
#define FLEETOPT_GRID_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fleetopt {

// Dense (O+1) x (N+1) x (T+1) table indexed by (type, age, period).
// Tables may be constructed with fewer leading entries (scalar or age-only)
// and broadcast to full shape by the scenario validator.
template <class T>
class Grid3 {
 public:
  Grid3() = default;
  Grid3(std::size_t no, std::size_t ni, std::size_t nj, T fill = T{})
      : no_(no), ni_(ni), nj_(nj), a_(no * ni * nj, fill) {}

  T& operator()(std::size_t o, std::size_t i, std::size_t j) {
    return a_[(o * ni_ + i) * nj_ + j];
  }
  const T& operator()(std::size_t o, std::size_t i, std::size_t j) const {
    return a_[(o * ni_ + i) * nj_ + j];
  }

  std::size_t num_types() const { return no_; }
  std::size_t num_ages() const { return ni_; }
  std::size_t num_periods() const { return nj_; }
  std::size_t size() const { return a_.size(); }
  bool empty() const { return a_.empty(); }

  std::vector<T>& raw() { return a_; }
  const std::vector<T>& raw() const { return a_; }

  bool same_shape(const Grid3& other) const {
    return no_ == other.no_ && ni_ == other.ni_ && nj_ == other.nj_;
  }

  friend bool operator==(const Grid3& a, const Grid3& b) {
    return a.no_ == b.no_ && a.ni_ == b.ni_ && a.nj_ == b.nj_ && a.a_ == b.a_;
  }

 private:
  std::size_t no_ = 0, ni_ = 0, nj_ = 0;
  std::vector<T> a_;
};

// (O+1) x (T+1) table indexed by (type, period).
template <class T>
class Grid2 {
 public:
  Grid2() = default;
  Grid2(std::size_t no, std::size_t nj, T fill = T{})
      : no_(no), nj_(nj), a_(no * nj, fill) {}

  T& operator()(std::size_t o, std::size_t j) { return a_[o * nj_ + j]; }
  const T& operator()(std::size_t o, std::size_t j) const {
    return a_[o * nj_ + j];
  }

  std::size_t num_types() const { return no_; }
  std::size_t num_periods() const { return nj_; }
  std::size_t size() const { return a_.size(); }
  bool empty() const { return a_.empty(); }

  std::vector<T>& raw() { return a_; }
  const std::vector<T>& raw() const { return a_; }

  friend bool operator==(const Grid2& a, const Grid2& b) {
    return a.no_ == b.no_ && a.nj_ == b.nj_ && a.a_ == b.a_;
  }

 private:
  std::size_t no_ = 0, nj_ = 0;
  std::vector<T> a_;
};

}  // namespace fleetopt

#endif  // FLEETOPT_GRID_HPP
