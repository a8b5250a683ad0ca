#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "delannoy/delannic.hpp"
#include "delannoy/linear.hpp"
#include "delannoy/order.hpp"

namespace delannoy {

// A tensor functor C_i -> uPerm(G^r, target) determined by the image A of
// the basic algebra; R^(n) goes to the tuple power A^(n).
class TensorFunctor {
public:
    int source_type = 1;
    MeasureSpec target;
    ExprPtr expr;  // may be null when the generator was supplied directly
    OrderedGSet gen;
    DelannicProfile prof;
    int ceiling = 6;  // largest tuple power the cache will build
    EvalLimits limits{};

    MeasureSpec source_measure() const { return MeasureSpec::single(source_type, target.field); }
    std::string describe() const;

    const TuplePower& power(int n) const;
    std::size_t block_cache_limit = 100000;  // larger blocks are rebuilt on demand
    // Image of the span R^(n_y) <- R^(|w|) -> R^(n_x) read off a two-slot word.
    std::shared_ptr<const Morphism> block(const Word& w) const;

private:
    mutable std::mutex mu_;
    mutable std::map<int, std::shared_ptr<const TuplePower>> powers_;
    mutable std::map<Word, std::shared_ptr<const Morphism>> blocks_;
};

struct BuildError : std::invalid_argument {
    DelannicProfile computed;
    BuildError(const std::string& what, DelannicProfile p) : std::invalid_argument(what), computed(std::move(p)) {}
};

std::shared_ptr<TensorFunctor> build_functor(int source_type, const MeasureSpec& target, const ExprPtr& expr,
                                             const Substitution* subst = nullptr);
std::shared_ptr<TensorFunctor> build_functor(int source_type, const MeasureSpec& target, const OrderedGSet& gen);
// Skips the type check; for negative controls only.
std::shared_ptr<TensorFunctor> build_unchecked(int source_type, const MeasureSpec& target, const OrderedGSet& gen);

GSet apply_object(const TensorFunctor& F, const GSet& x);
Morphism apply_morphism(const TensorFunctor& F, const Morphism& f);
// Psi of the OI map R^(n) -> R^(m) given by j: [m] -> [n].
GSetMap apply_injection(const TensorFunctor& F, const OIInjection& j);

// The isomorphism Psi(X x Y) -> Psi(X) x Psi(Y) obtained by regrouping slots.
GSetMap regrouping_iso(const TensorFunctor& F, const GSet& x, const GSet& y);

struct CheckReport {
    bool pass = true;
    bool complete = true;  // false when the time budget ran out first
    long checked = 0;
    long total = 0;        // cases the sweep would cover without a budget
    std::string witness;  // first failure
    std::string note;
};

// Cases run cheapest first; budget_seconds <= 0 means no limit. A sweep cut
// short by the budget reports pass = false with complete = false.
// Cases needing a tuple power above max_power (0: the functor's ceiling) are
// left unchecked and the report is incomplete.
CheckReport check_functoriality(const TensorFunctor& F, int bound, double budget_seconds = 0, int max_power = 0);
CheckReport check_monoidality(const TensorFunctor& F, int bound, double budget_seconds = 0, int max_power = 0);
// Full sweep over OI maps with n <= bound, omissions with n <= max(bound, 4),
// the generator maps p_{1,1}, p_{2,1}, p_{2,2}, and dimension preservation.
CheckReport check_measure_compat(const TensorFunctor& F, int bound);
CheckReport check_transpose(const TensorFunctor& F, int bound);

bool faithful(const TensorFunctor& F);

struct FullVerdict {
    bool full = true;
    int bound = 0;
    std::vector<std::size_t> orbit_counts;  // |A^(n)| for n = 0..bound
};
FullVerdict full(const TensorFunctor& F, int bound);

// gamma-tilde of a map of G-sets: per target orbit, the summed fiber measure.
std::vector<Scalar> gamma_tilde(const GSetMap& f, const MeasureSpec& m);

}  // namespace delannoy
