#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pmc/kernel/trig_rational.hpp"

namespace pmc {

class Formula;

namespace detail {

enum class NodeKind { Leaf, Add, Mul, Neg, Inv, Pow, Diff };

inline std::uint8_t dep_bit(DiffVar v) { return static_cast<std::uint8_t>(1u << static_cast<int>(v)); }

inline std::uint8_t leaf_deps(const TrigRational& e) {
  std::uint8_t d = 0;
  for (DiffVar v : {DiffVar::alpha, DiffVar::a, DiffVar::abar})
    if (e.depends_on(v)) d |= dep_bit(v);
  return d;
}

inline DiffVar conj_var(DiffVar v) {
  if (v == DiffVar::a) return DiffVar::abar;
  if (v == DiffVar::abar) return DiffVar::a;
  return v;
}

struct Node;
using NodePtr = std::shared_ptr<const Node>;

}  // namespace detail

/// Immutable expression DAG over TrigRational leaves.
///
/// Catalog entries are built as Formulas so that one construction serves
/// both exact materialization (Formula::materialize) and pointwise
/// evaluation in any field (Evaluator). Derivatives, conjugates and
/// materialized values are cached per node and shared across threads.
class Formula {
 public:
  Formula();
  Formula(TrigRational e);  // NOLINT
  Formula(long c) : Formula(TrigRational(c)) {}                 // NOLINT
  Formula(GaussianRational c) : Formula(TrigRational(std::move(c))) {}  // NOLINT

  static Formula var(Var v) { return Formula(TrigRational::var(v)); }
  static Formula from_node(detail::NodePtr n) { return Formula(std::move(n)); }

  bool is_zero() const;
  bool is_one() const;
  bool depends_on(DiffVar v) const;
  const detail::Node& node() const { return *node_; }
  const detail::NodePtr& ptr() const { return node_; }

  friend Formula operator+(const Formula& x, const Formula& y);
  friend Formula operator-(const Formula& x, const Formula& y);
  friend Formula operator*(const Formula& x, const Formula& y);
  friend Formula operator/(const Formula& x, const Formula& y);
  Formula operator-() const;
  Formula inverse() const;
  Formula pow(long e) const;

  Formula& operator+=(const Formula& y) { return *this = *this + y; }
  Formula& operator-=(const Formula& y) { return *this = *this - y; }
  Formula& operator*=(const Formula& y) { return *this = *this * y; }

  /// Lazy partial derivative node.
  Formula diff(DiffVar v) const;
  /// Derivative rewritten into Add/Mul/... nodes with no Diff at the top.
  Formula expanded_diff(DiffVar v) const;
  /// Structural conjugate: leaves conjugated, Diff in a becomes Diff in abar.
  Formula conj() const;

  /// Exact canonical value; cached on success.
  TrigRational materialize() const;
  /// The materialized value if already known.
  std::optional<TrigRational> cached() const;

  /// Number of distinct nodes reachable from here.
  std::size_t dag_size() const;

 private:
  explicit Formula(detail::NodePtr n) : node_(std::move(n)) {}
  static Formula make(detail::NodeKind kind, std::vector<Formula> kids, long exponent = 0,
                      DiffVar var = DiffVar::alpha);
  friend struct detail::Node;

  detail::NodePtr node_;
};

namespace detail {

struct Node {
  NodeKind kind = NodeKind::Leaf;
  TrigRational leaf;
  std::vector<Formula> kids;
  long exponent = 0;
  DiffVar var = DiffVar::alpha;
  std::uint8_t deps = 0;
  std::uint64_t id = 0;

  mutable std::mutex mu;
  mutable std::optional<TrigRational> value;
  mutable std::shared_ptr<const Node> conj_cache;
  mutable std::weak_ptr<const Node> conj_origin;
  mutable std::array<std::shared_ptr<const Node>, 3> diff_cache;

  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
  }
};

}  // namespace detail

inline Formula::Formula() : Formula(TrigRational()) {}

inline Formula::Formula(TrigRational e) {
  auto n = std::make_shared<detail::Node>();
  n->kind = detail::NodeKind::Leaf;
  n->deps = detail::leaf_deps(e);
  n->leaf = std::move(e);
  n->id = detail::Node::next_id();
  node_ = std::move(n);
}

inline bool Formula::is_zero() const { return node_->kind == detail::NodeKind::Leaf && node_->leaf.is_zero(); }
inline bool Formula::is_one() const {
  return node_->kind == detail::NodeKind::Leaf && node_->leaf.is_constant() &&
         node_->leaf.numerator().constant_value().is_one();
}
inline bool Formula::depends_on(DiffVar v) const { return node_->deps & detail::dep_bit(v); }

inline Formula Formula::make(detail::NodeKind kind, std::vector<Formula> kids, long exponent, DiffVar var) {
  auto n = std::make_shared<detail::Node>();
  n->kind = kind;
  n->exponent = exponent;
  n->var = var;
  for (const auto& k : kids) n->deps |= k.node_->deps;
  n->kids = std::move(kids);
  n->id = detail::Node::next_id();
  return Formula(detail::NodePtr(std::move(n)));
}

inline Formula operator+(const Formula& x, const Formula& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  return Formula::make(detail::NodeKind::Add, {x, y});
}
inline Formula Formula::operator-() const {
  if (is_zero()) return *this;
  if (node_->kind == detail::NodeKind::Neg) return node_->kids[0];
  return make(detail::NodeKind::Neg, {*this});
}
inline Formula operator-(const Formula& x, const Formula& y) { return x + (-y); }
inline Formula operator*(const Formula& x, const Formula& y) {
  if (x.is_zero() || y.is_zero()) return Formula();
  if (x.is_one()) return y;
  if (y.is_one()) return x;
  return Formula::make(detail::NodeKind::Mul, {x, y});
}
inline Formula Formula::inverse() const {
  if (is_zero()) throw ZeroDenominator();
  if (node_->kind == detail::NodeKind::Leaf && node_->leaf.is_constant()) return Formula(node_->leaf.inverse());
  return make(detail::NodeKind::Inv, {*this});
}
inline Formula operator/(const Formula& x, const Formula& y) { return x * y.inverse(); }
inline Formula Formula::pow(long e) const {
  if (e == 0) return Formula(1);
  if (e == 1) return *this;
  if (e < 0) return pow(-e).inverse();
  if (is_zero()) return *this;
  return make(detail::NodeKind::Pow, {*this}, e);
}

inline Formula Formula::diff(DiffVar v) const {
  if (!depends_on(v)) return Formula();
  return make(detail::NodeKind::Diff, {*this}, 0, v);
}

inline Formula Formula::expanded_diff(DiffVar v) const {
  using detail::NodeKind;
  if (!depends_on(v)) return Formula();
  const auto& n = *node_;
  int slot = static_cast<int>(v);
  {
    std::lock_guard lock(n.mu);
    if (n.diff_cache[slot]) return Formula(n.diff_cache[slot]);
  }
  std::shared_ptr<const detail::Node> origin;
  {
    std::lock_guard lock(n.mu);
    origin = n.conj_origin.lock();
  }
  Formula r;
  if (origin) {
    r = Formula(origin).expanded_diff(detail::conj_var(v)).conj();
  } else switch (n.kind) {
    case NodeKind::Leaf: r = Formula(n.leaf.differentiate(v)); break;
    case NodeKind::Add: r = n.kids[0].expanded_diff(v) + n.kids[1].expanded_diff(v); break;
    case NodeKind::Neg: r = -n.kids[0].expanded_diff(v); break;
    case NodeKind::Mul:
      r = n.kids[0].expanded_diff(v) * n.kids[1] + n.kids[0] * n.kids[1].expanded_diff(v);
      break;
    case NodeKind::Inv: r = -(n.kids[0].expanded_diff(v) * (*this) * (*this)); break;
    case NodeKind::Pow:
      r = Formula(n.exponent) * n.kids[0].pow(n.exponent - 1) * n.kids[0].expanded_diff(v);
      break;
    case NodeKind::Diff: r = n.kids[0].expanded_diff(n.var).expanded_diff(v); break;
  }
  std::lock_guard lock(n.mu);
  if (!n.diff_cache[slot]) n.diff_cache[slot] = r.node_;
  return Formula(n.diff_cache[slot]);
}

inline Formula Formula::conj() const {
  using detail::NodeKind;
  const auto& n = *node_;
  {
    std::lock_guard lock(n.mu);
    if (n.conj_cache) return Formula(n.conj_cache);
    if (auto origin = n.conj_origin.lock()) return Formula(origin);
  }
  Formula r;
  switch (n.kind) {
    case NodeKind::Leaf: r = Formula(n.leaf.conjugate()); break;
    case NodeKind::Add: r = n.kids[0].conj() + n.kids[1].conj(); break;
    case NodeKind::Neg: r = -n.kids[0].conj(); break;
    case NodeKind::Mul: r = n.kids[0].conj() * n.kids[1].conj(); break;
    case NodeKind::Inv: r = n.kids[0].conj().inverse(); break;
    case NodeKind::Pow: r = n.kids[0].conj().pow(n.exponent); break;
    case NodeKind::Diff: r = n.kids[0].conj().diff(detail::conj_var(n.var)); break;
  }
  {
    std::lock_guard lock(n.mu);
    if (n.conj_cache) return Formula(n.conj_cache);
    n.conj_cache = r.node_;
  }
  if (r.node_ != node_) {
    std::lock_guard lock(r.node_->mu);
    if (!r.node_->conj_cache) r.node_->conj_origin = node_;
  }
  return r;
}

inline std::optional<TrigRational> Formula::cached() const {
  std::lock_guard lock(node_->mu);
  if (node_->kind == detail::NodeKind::Leaf) return node_->leaf;
  return node_->value;
}

inline TrigRational Formula::materialize() const {
  using detail::NodeKind;
  const auto& n = *node_;
  if (n.kind == NodeKind::Leaf) return n.leaf;
  std::lock_guard lock(n.mu);
  if (n.value) return *n.value;
  TrigRational r;
  auto origin = n.conj_origin.lock();
  if (origin) {
    r = Formula(origin).materialize().conjugate();
  } else {
    switch (n.kind) {
      case NodeKind::Leaf: break;
      case NodeKind::Add: r = n.kids[0].materialize() + n.kids[1].materialize(); break;
      case NodeKind::Neg: r = -n.kids[0].materialize(); break;
      case NodeKind::Mul: r = n.kids[0].materialize() * n.kids[1].materialize(); break;
      case NodeKind::Inv: r = n.kids[0].materialize().inverse(); break;
      case NodeKind::Pow: r = n.kids[0].materialize().pow(n.exponent); break;
      case NodeKind::Diff: r = n.kids[0].materialize().differentiate(n.var); break;
    }
  }
  n.value = r;
  return r;
}

inline std::size_t Formula::dag_size() const {
  std::unordered_map<const detail::Node*, bool> seen;
  std::vector<const detail::Node*> stack{node_.get()};
  while (!stack.empty()) {
    const auto* n = stack.back();
    stack.pop_back();
    if (!seen.emplace(n, true).second) continue;
    for (const auto& k : n->kids) stack.push_back(k.node_.get());
  }
  return seen.size();
}

inline Formula conj(const Formula& f) { return f.conj(); }
inline Formula d(const Formula& f, DiffVar v) { return f.diff(v); }

/// How a value field plugs into Evaluator.
template <class Field>
struct FieldTraits;

template <>
struct FieldTraits<GaussianRational> {
  static GaussianRational from(const GaussianRational& q) { return q; }
  static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
  static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
  static GaussianRational inverse(const GaussianRational& x) {
    if (x.is_zero()) throw PoleAtPoint();
    return GaussianRational(1) / x;
  }
};

/// Pointwise evaluation of Formulas at (s, c, a, abar, rho, b) values with
/// abar the conjugate of a, so a conjugated node evaluates to the conjugate
/// of its origin's value. Memoized per Evaluator.
template <class Field, class Traits = FieldTraits<Field>>
class Evaluator {
 public:
  explicit Evaluator(std::array<Field, 6> values) : values_(std::move(values)) {}

  Field operator()(const Formula& f) { return eval(f); }

  Field eval(const Formula& f) {
    using detail::NodeKind;
    const auto& n = f.node();
    auto it = memo_.find(&n);
    if (it != memo_.end()) return it->second;
    Field r = compute(f);
    memo_.emplace(&n, r);
    keep_.push_back(f.ptr());
    return r;
  }

 private:
  Field compute(const Formula& f) {
    using detail::NodeKind;
    const auto& n = f.node();
    if (n.kind != NodeKind::Leaf) {
      std::shared_ptr<const detail::Node> origin;
      {
        std::lock_guard lock(n.mu);
        origin = n.conj_origin.lock();
      }
      if (origin) return Traits::conj(eval(Formula::from_node(origin)));
    }
    switch (n.kind) {
      case NodeKind::Leaf: {
        auto [num, den] = n.leaf.template evaluate_parts<Field>(values_, [](const GaussianRational& q) {
          return Traits::from(q);
        });
        return num * Traits::inverse(den);
      }
      case NodeKind::Add: return eval(n.kids[0]) + eval(n.kids[1]);
      case NodeKind::Neg: return Field(0) - eval(n.kids[0]);
      case NodeKind::Mul: return eval(n.kids[0]) * eval(n.kids[1]);
      case NodeKind::Inv: return Traits::inverse(eval(n.kids[0]));
      case NodeKind::Pow: {
        Field base = eval(n.kids[0]);
        Field r(1);
        for (long k = 0; k < n.exponent; ++k) r = r * base;
        return r;
      }
      case NodeKind::Diff: return eval(n.kids[0].expanded_diff(n.var));
    }
    return Field(0);
  }

  std::array<Field, 6> values_;
  std::unordered_map<const detail::Node*, Field> memo_;
  std::vector<detail::NodePtr> keep_;
};

}  // namespace pmc
