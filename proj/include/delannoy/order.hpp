#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "delannoy/orbit.hpp"

namespace delannoy {

struct OrderExpr;
using ExprPtr = std::shared_ptr<const OrderExpr>;

struct OrderExpr {
    enum class Kind { Zero, Unit, Gen, Rev, Sum, Prod, Tup };
    Kind kind = Kind::Zero;
    int factor = 0;         // Gen: 0-based group factor
    int n = 0;              // Tup: power
    std::vector<int> perm;  // Tup: 1-based one-line permutation of [n]
    std::vector<ExprPtr> kids;

    static ExprPtr zero();
    static ExprPtr unit();
    static ExprPtr gen(int factor = 0);
    static ExprPtr rev(ExprPtr e);
    static ExprPtr sum(ExprPtr a, ExprPtr b);
    static ExprPtr prod(ExprPtr a, ExprPtr b);
    static ExprPtr tup(ExprPtr e, int n, std::vector<int> perm = {});

    int size() const;        // number of constructor nodes
    int max_factor() const;  // largest Gen factor used, -1 if none
    std::string str() const;
};

struct ParseError : std::invalid_argument {
    std::size_t position;  // 1-based column
    ParseError(const std::string& what, std::size_t pos);
};

ExprPtr parse_expr(const std::string& text);

// Ordered G-set: the relation is a set of components of X x X.
struct OrderedGSet {
    GSet carrier;
    std::set<Component> less;

    int r() const { return carrier.r; }
    bool contains(const Component& c) const { return less.count(c) != 0; }
    bool operator==(const OrderedGSet& o) const { return carrier == o.carrier && less == o.less; }
};

// Bounds evaluation so that enumeration suites can skip runaway expressions.
struct EvalLimits {
    std::size_t max_orbits = 200000;
    std::size_t max_relation = 2000000;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Generator substitution: Gen(t) evaluates to subst[t] when present.
using Substitution = std::map<int, OrderedGSet>;

OrderedGSet evaluate(const ExprPtr& e, int r, const EvalLimits& lim = {}, const Substitution* subst = nullptr);

OrderedGSet ordered_zero(int r);
OrderedGSet ordered_unit(int r);
OrderedGSet ordered_gen(int r, int t);
OrderedGSet reverse(const OrderedGSet& a);
OrderedGSet lex_sum(const OrderedGSet& a, const OrderedGSet& b, const EvalLimits& lim = {});
OrderedGSet lex_prod(const OrderedGSet& a, const OrderedGSet& b, const EvalLimits& lim = {});
// Induced order on a sub-list of carrier orbits (kept in the given order).
OrderedGSet restrict_to(const OrderedGSet& a, const std::vector<std::size_t>& orbits);

struct OrderReport {
    bool pass = true;
    std::string failure;
    long pairs_checked = 0, triples_checked = 0;
};

OrderReport verify(const OrderedGSet& o);

// Components of the n-fold power whose every (i,j) projection, i<j, is in less.
struct TuplePower {
    int n = 0;
    GSet gset;
    std::vector<Component> comps;
    std::unordered_map<Component, std::size_t, ComponentHash> index;

    std::size_t find(const Component& c) const;
    // The coordinate-selection map X^(n) -> X^(m) for an OI injection [m] -> [n].
    GSetMap along(const OIInjection& j, const TuplePower& lower) const;
    GSetMap coordinate(int k, const GSet& carrier) const;  // X^(n) -> X, 1-based k
};

TuplePower tuples(const OrderedGSet& o, int n, const EvalLimits& lim = {});
// X^(n) with the permlex order for sigma (identity = lexicographic).
OrderedGSet tuples_ordered(const OrderedGSet& o, int n, const std::vector<int>& perm = {}, const EvalLimits& lim = {});

// A preorder on s points; le[i][j] means i <= j.
struct Preorder {
    int s = 0;
    std::vector<std::vector<char>> le;

    static Preorder discrete(int s);               // only reflexivity
    static Preorder chain(int s);                  // 1 < 2 < ... < s
    static Preorder from_blocks(const std::vector<int>& block_rank);  // total preorder
    bool valid() const;
};

std::vector<Preorder> total_preorders(int s);

std::vector<Component> order_scheme_subobject(const OrderedGSet& o, const Preorder& S);

// Unique isomorphism (orbit bijection with identity maps) or none.
std::optional<GSetMap> ordered_iso(const OrderedGSet& a, const OrderedGSet& b);

struct FiniteLike {
    bool finite = false;
    int n = -1;  // smallest n with X^(n) empty, when finite
};
FiniteLike finite_like(const OrderedGSet& o, int bound);
// Structural verdict on an expression: true iff some Gen survives.
bool structurally_infinite(const ExprPtr& e);

std::string order_text(const OrderedGSet& o);

}  // namespace delannoy
