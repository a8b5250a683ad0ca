#pragma once

#include <optional>
#include <string>
#include <vector>

#include "delannoy/measure.hpp"
#include "delannoy/order.hpp"

namespace delannoy {

enum class DelType { T1 = 1, T2 = 2, T3 = 3, T4 = 4, Zero, NotDelannic };

std::string type_name(DelType t);
DelType type_of_index(int i);  // 1..4
int type_index(DelType t);     // 1..4, or 0 otherwise
bool is_typed(DelType t);      // one of T1..T4

// Which coordinate gamma_i forgets. Slot: gamma_i comes from the projection
// omitting coordinate i, matching the p_{2,i} row of the measure table.
// Elementwise: the opposite slot.
enum class GammaConvention { Slot, Elementwise };

struct DelannicProfile {
    Scalar dim;
    std::vector<Scalar> gamma1, gamma2;  // per carrier orbit
    bool uniform1 = true, uniform2 = true;
    Scalar g1, g2;  // common values when uniform
    DelType type = DelType::Zero;
    std::string note;  // why the object is not Delannic

    std::string str() const;
};

// Requires verify(o) to pass; throws std::invalid_argument otherwise.
DelannicProfile profile(const OrderedGSet& o, const MeasureSpec& spec,
                        GammaConvention conv = GammaConvention::Slot, bool check_order = true);

// Row of the type table: (dim, gamma1, gamma2).
std::array<int, 3> type_row(int i);

std::optional<int> type_add(int i, int j);
int type_mul(int i, int j);
int type_lambda(int n, int i);

struct LemmaReport {
    bool pass = true;
    std::vector<Scalar> lhs1, rhs1, lhs2, rhs2;
    std::string detail;
};

// Compares the gamma vectors of sum(a,b) with the formula built from the
// profiles of a and b, under the given convention.
LemmaReport gamma_lexsum_identity_check(const OrderedGSet& a, const OrderedGSet& b, const MeasureSpec& spec,
                                        GammaConvention conv = GammaConvention::Slot);

struct ClosureReport {
    bool pass = true;
    long expressions = 0;   // expressions enumerated
    long evaluated = 0;     // distinct (expression, measure) profiles computed
    long skipped = 0;       // over budget
    long sums = 0, sums_undefined = 0, products = 0, powers = 0, reversals = 0;
    long lemma_pairs = 0;
    std::vector<std::string> failures;
};

struct ClosureOptions {
    int max_size = 4;        // expression size (constructor nodes)
    int lemma_size = 3;      // operand size for the sum lemma sweep
    int max_power = 3;       // tup exponents 0..max_power
    EvalLimits limits{2000, 200000};
    std::vector<int> measures{1, 2, 3, 4};
};

ClosureReport closure_suite(const ClosureOptions& opt);

// All expressions with exactly `size` nodes over leaves 0, 1, R.
std::vector<ExprPtr> enumerate_expressions(int size, int max_power);

}  // namespace delannoy
