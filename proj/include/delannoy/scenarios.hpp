#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "delannoy/delannic.hpp"
#include "delannoy/functor.hpp"
#include "delannoy/linear.hpp"

namespace delannoy {

struct Assertion {
    std::string claim;
    bool pass = false;
    std::string detail;
};

struct ScenarioReport {
    std::string name;
    std::string setup;
    std::vector<Assertion> assertions;
    std::vector<std::string> info;  // informational lines, never fail

    bool pass() const;
    void check(std::string claim, bool ok, std::string detail = {});
    std::string text() const;
    nlohmann::json to_json() const;
};

// Budget knobs for the functor sweeps. Zero means unlimited.
struct SweepOptions {
    int bound = 3;
    double seconds_per_check = 0;
    int max_power = 0;
};

struct FunctorCase {
    std::string name;
    int source_type;
    MeasureSpec target;
    std::string expr;
};

// Phi0 and the sum-of-powers functor out of C2, then the functors out of C3 and C4.
std::vector<FunctorCase> standard_functors();

struct FunctorSummary {
    FunctorCase spec;
    std::shared_ptr<TensorFunctor> F;
    CheckReport functoriality, monoidality, measure_compat, transpose;
    bool faithful = false;
    FullVerdict full;
    bool pass() const { return functoriality.pass && monoidality.pass && measure_compat.pass && transpose.pass; }
};

FunctorSummary check_functor(const FunctorCase& c, const SweepOptions& opt);

// Left inverses for the images of the pullback along p_{2,2} in C2.
struct EnvelopeReport {
    Morphism f;  // in C2
    LeftInverse source, phi0, phi1;
    bool phi0_certificate_ok = false;  // re-checked dual certificate
    bool phi1_witness_ok = false;      // re-checked g o f = id
};
EnvelopeReport envelope_separation();

// The dimension-0 algebra over G x G with mu1 x mu1.
struct SquareReport {
    OrderedGSet a1, a2, p, e_prime, e, lhs, rhs;
    DelannicProfile prof_e_prime, prof_e, prof_a2, prof_c1;  // prof_c1: sum(R,tup(R,2)) in mu1
    bool power_splits = false;  // P^(2) = E' + A2^(2)
    bool carrier_ok = false;
    std::optional<GSetMap> iso;
};
SquareReport dim0_square();

std::vector<std::string> scenario_names();
// Throws std::invalid_argument on an unknown name.
ScenarioReport run_scenario(const std::string& name, const SweepOptions& opt = {});

// Every invariant suite at the given depth; deterministic.
ScenarioReport selftest(int depth);

// Gram matrix ranks of Hom(R^(a), R^(b)) for a, b <= bound.
struct GramEntry {
    int a, b;
    std::size_t size, rank;
};
std::vector<GramEntry> gram_rank_profile(const MeasureSpec& m, int bound);

}  // namespace delannoy
