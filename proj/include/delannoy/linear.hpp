#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "delannoy/matrix.hpp"
#include "delannoy/measure.hpp"
#include "delannoy/orbit.hpp"

namespace delannoy {

// A G-invariant target x source matrix in the orbit basis. Keys are
// two-slot components: slot 0 is a target orbit, slot 1 a source orbit.
struct Morphism {
    GSet source, target;
    MeasureSpec measure;
    std::map<Component, Scalar> coeffs;

    static Morphism zero(const GSet& source, const GSet& target, const MeasureSpec& m);
    static Morphism identity(const GSet& x, const MeasureSpec& m);
    static Morphism basis(const GSet& source, const GSet& target, const MeasureSpec& m, const Component& z);

    void add(const Component& key, const Scalar& v);
    Scalar coeff(const Component& key) const;
    bool is_zero() const { return coeffs.empty(); }
    bool valid() const;  // keys are genuine components of target x source

    Morphism operator+(const Morphism& o) const;
    Morphism operator-(const Morphism& o) const;
    Morphism scaled(const Scalar& s) const;
    bool operator==(const Morphism& o) const;
    bool operator!=(const Morphism& o) const { return !(*this == o); }
};

// The components of X x Y with a lookup table; the G-set is the list of
// their ambient symbols.
struct ProductObject {
    GSet gset;
    std::vector<Component> comps;
    std::unordered_map<Component, std::size_t, ComponentHash> index;

    static ProductObject of(const GSet& x, const GSet& y);
    std::size_t find(const Component& c) const;  // throws if absent
};

std::vector<Component> hom_basis(const GSet& x, const GSet& y);  // components of Y x X

Morphism pullback(const GSetMap& f, const MeasureSpec& m);     // C(target f) -> C(source f)
Morphism pushforward(const GSetMap& f, const MeasureSpec& m);  // C(source f) -> C(target f)

Morphism compose(const Morphism& g, const Morphism& f);  // g o f
Morphism tensor(const Morphism& f, const Morphism& g);
Morphism direct_sum(const Morphism& f, const Morphism& g);
Morphism transpose(const Morphism& f);
Scalar trace(const Morphism& f);
Scalar dim(const GSet& x, const MeasureSpec& m);

struct AlgebraStructure {
    Morphism unit, mult, counit;
};
AlgebraStructure algebra_structure(const GSet& x, const MeasureSpec& m);

// (Z, W) -> trace(A_Z o A_W) for Z in hom_basis(X,Y), W in hom_basis(Y,X).
Matrix gram_matrix(const GSet& x, const GSet& y, const MeasureSpec& m);

struct LeftInverse {
    std::optional<Morphism> witness;  // g with g o f = id
    std::vector<Scalar> certificate;  // dual vector proving infeasibility
    std::size_t unknowns = 0, equations = 0;
};
LeftInverse solve_left_inverse(const Morphism& f);

struct LawReport {
    bool pass = true;
    long identities = 0, triples = 0, traces = 0;
    std::string counterexample;
};

// Identity and associativity laws over all basis morphisms among R^(0..bound)
// in a single-factor category, plus trace(g o f) = trace(f o g).
LawReport check_category_laws(const MeasureSpec& m, int bound);

// Per-factor span composition of two-slot words, aggregated by result word.
// Exposed for tests; weights are the measure of the connecting map.
std::vector<std::pair<Word, long>> compose_words(const Word& w, const Word& v, int measure_index);

}  // namespace delannoy
