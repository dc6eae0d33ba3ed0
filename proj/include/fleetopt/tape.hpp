#ifndef FLEETOPT_TAPE_HPP
#define FLEETOPT_TAPE_HPP

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace fleetopt {

// Scalar reverse-mode differentiation on a per-thread tape.
//
// Kink conventions (one-sided derivatives chosen so that exactly-active
// clamps do not push the iterate off its bound):
//   relu(z)  : d/dz = 0 at z == 0
//   min1(z)  : d/dz = 0 at z == 1
//   absval(z): d/dz = 0 at z == 0
//   ste_floor: value floor(z), derivative 1 (straight-through estimator)
class Tape {
 public:
  // Each node has at most two parents; pa/pb index earlier nodes, with -1
  // meaning "no parent". da/db are local partial derivatives.
  struct Node {
    int pa, pb;
    double da, db;
  };

  int leaf() {
    nodes_.push_back({-1, -1, 0.0, 0.0});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int unary(int a, double da) {
    nodes_.push_back({a, -1, da, 0.0});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int binary(int a, double da, int b, double db) {
    nodes_.push_back({a, b, da, db});
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::size_t size() const { return nodes_.size(); }
  void clear() { nodes_.clear(); }

  // Reverse sweep from node `root`; returns d root / d node for all nodes.
  std::vector<double> gradient(int root) const {
    std::vector<double> adj(nodes_.size(), 0.0);
    if (root >= 0) adj[root] = 1.0;
    for (int k = root; k >= 0; --k) {
      const double g = adj[k];
      if (g == 0.0) continue;
      const Node& n = nodes_[k];
      if (n.pa >= 0) adj[n.pa] += g * n.da;
      if (n.pb >= 0) adj[n.pb] += g * n.db;
    }
    return adj;
  }

  static Tape*& active() {
    thread_local Tape* t = nullptr;
    return t;
  }

 private:
  std::vector<Node> nodes_;
};

// RAII activation of a tape for the Var overloads below.
struct TapeScope {
  explicit TapeScope(Tape& t) : prev_(Tape::active()) { Tape::active() = &t; }
  ~TapeScope() { Tape::active() = prev_; }
  TapeScope(const TapeScope&) = delete;
  TapeScope& operator=(const TapeScope&) = delete;

 private:
  Tape* prev_;
};

// Differentiable scalar. idx < 0 marks a constant (not on the tape), so
// default-constructed Vars and literals cost nothing.
struct Var {
  double val = 0.0;
  int idx = -1;

  Var() = default;
  /*implicit*/ Var(double v) : val(v) {}

  static Var leaf(double v) {
    Tape* t = Tape::active();
    assert(t && "no active tape");
    return Var{v, t->leaf()};
  }

 private:
  Var(double v, int i) : val(v), idx(i) {}
  friend Var make_node(double, int);
};

inline Var make_node(double v, int i) {
  Var out;
  out.val = v;
  out.idx = i;
  return out;
}

namespace tape_detail {

inline int record(double da_a, int a, double db_b, int b) {
  Tape* t = Tape::active();
  assert(t && "no active tape");
  if (a >= 0 && b >= 0) return t->binary(a, da_a, b, db_b);
  if (a >= 0) return t->unary(a, da_a);
  if (b >= 0) return t->unary(b, db_b);
  return -1;
}

}  // namespace tape_detail

inline Var operator+(const Var& a, const Var& b) {
  if (a.idx < 0 && b.idx < 0) return Var(a.val + b.val);
  return make_node(a.val + b.val,
                   tape_detail::record(1.0, a.idx, 1.0, b.idx));
}

inline Var operator-(const Var& a, const Var& b) {
  if (a.idx < 0 && b.idx < 0) return Var(a.val - b.val);
  return make_node(a.val - b.val,
                   tape_detail::record(1.0, a.idx, -1.0, b.idx));
}

inline Var operator-(const Var& a) {
  if (a.idx < 0) return Var(-a.val);
  return make_node(-a.val, tape_detail::record(-1.0, a.idx, 0.0, -1));
}

inline Var operator*(const Var& a, double c) {
  if (a.idx < 0) return Var(a.val * c);
  return make_node(a.val * c, tape_detail::record(c, a.idx, 0.0, -1));
}

inline Var operator*(double c, const Var& a) { return a * c; }

inline Var& operator+=(Var& a, const Var& b) { return a = a + b; }
inline Var& operator-=(Var& a, const Var& b) { return a = a - b; }

inline Var relu(const Var& a) {
  if (a.val > 0.0) {
    if (a.idx < 0) return Var(a.val);
    return make_node(a.val, tape_detail::record(1.0, a.idx, 0.0, -1));
  }
  return Var(0.0);
}

inline Var min1(const Var& a) {
  if (a.val < 1.0) {
    if (a.idx < 0) return Var(a.val);
    return make_node(a.val, tape_detail::record(1.0, a.idx, 0.0, -1));
  }
  return Var(1.0);
}

inline Var absval(const Var& a) {
  if (a.val == 0.0 || a.idx < 0) return Var(std::abs(a.val));
  const double sign = a.val > 0.0 ? 1.0 : -1.0;
  return make_node(std::abs(a.val),
                   tape_detail::record(sign, a.idx, 0.0, -1));
}

// Straight-through rounding: integer value forward, identity backward.
inline Var ste_floor(const Var& a) {
  if (a.idx < 0) return Var(std::floor(a.val));
  return make_node(std::floor(a.val),
                   tape_detail::record(1.0, a.idx, 0.0, -1));
}

}  // namespace fleetopt

#endif  // FLEETOPT_TAPE_HPP
