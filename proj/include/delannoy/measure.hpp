#pragma once

#include <array>
#include <string>
#include <vector>

#include "delannoy/orbit.hpp"
#include "delannoy/scalar.hpp"

namespace delannoy {

// Values of one measure on p_{1,1}, p_{2,1}, p_{2,2}.
struct BaseValues {
    int v1, v21, v22;
};

BaseValues base_values(int index);  // index in 1..4

// A product of Delannoy measures on G^r, one index per factor, over a field.
struct MeasureSpec {
    std::vector<int> index{1};
    Field field{};

    int r() const { return static_cast<int>(index.size()); }
    static MeasureSpec single(int i, Field f = {}) { return MeasureSpec{{i}, f}; }
    static MeasureSpec product(std::vector<int> idx, Field f = {}) { return MeasureSpec{std::move(idx), f}; }
    // "mu1", "mu1xmu2", "mu1,mu1", "1x1"
    static MeasureSpec parse(const std::string& s, Field f = {});
    std::string str() const;
    Scalar scalar(long v) const { return Scalar(v, field); }
    bool operator==(const MeasureSpec&) const = default;
};

// Integer-valued versions; every value lies in {-1, 0, 1}.
int mu_omission_int(int n, int i, int index);
int mu_injection_int(const OIInjection& j, int index);
// Omits the non-selected coordinates in the given order (values in [n]).
int mu_injection_path(const OIInjection& j, const std::vector<int>& order, int index);
int mu_transitive_int(const TransitiveMap& f, const MeasureSpec& spec);
int mu_symbol_int(const OrbitSymbol& x, const MeasureSpec& spec);  // mu(x -> 1)

Scalar mu_omission(int n, int i, const MeasureSpec& spec, int factor = 0);
Scalar mu_injection(const OIInjection& j, const MeasureSpec& spec, int factor = 0);
Scalar mu_transitive(const TransitiveMap& f, const MeasureSpec& spec);
Scalar mu_map(const GSetMap& f, const MeasureSpec& spec);
Scalar mu_object(const GSet& x, const MeasureSpec& spec);

struct AxiomReport {
    bool pass = true;
    long squares = 0;          // base-change squares checked
    long compositions = 0;     // composable pairs checked
    std::string counterexample;
};

AxiomReport check_measure_axioms(const MeasureSpec& spec, int bound);

}  // namespace delannoy
