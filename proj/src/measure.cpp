#include "delannoy/measure.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace delannoy {

BaseValues base_values(int index) {
    switch (index) {
        case 1: return {-1, -1, -1};
        case 2: return {0, -1, 0};
        case 3: return {0, 0, -1};
        case 4: return {1, 0, 0};
    }
    throw std::invalid_argument("measure index must be 1..4");
}

MeasureSpec MeasureSpec::parse(const std::string& raw, Field f) {
    MeasureSpec m;
    m.index.clear();
    m.field = f;
    std::string s;
    for (char c : raw) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::size_t i = 0;
    while (i < s.size()) {
        if (s.compare(i, 2, "mu") == 0) i += 2;
        if (i >= s.size() || s[i] < '1' || s[i] > '4')
            throw std::invalid_argument("bad measure spec '" + raw + "' at position " + std::to_string(i + 1));
        m.index.push_back(s[i] - '0');
        ++i;
        if (i < s.size()) {
            if (s[i] != 'x' && s[i] != ',' && s[i] != '*')
                throw std::invalid_argument("bad measure spec '" + raw + "' at position " + std::to_string(i + 1));
            ++i;
            if (i == s.size()) throw std::invalid_argument("trailing separator in measure spec '" + raw + "'");
        }
    }
    if (m.index.empty() || m.r() > kMaxFactors) throw std::invalid_argument("bad measure spec '" + raw + "'");
    return m;
}

std::string MeasureSpec::str() const {
    std::string s;
    for (std::size_t t = 0; t < index.size(); ++t) {
        if (t) s += "x";
        s += "mu" + std::to_string(index[t]);
    }
    return s;
}

int mu_omission_int(int n, int i, int index) {
    if (n < 1 || i < 1 || i > n) throw std::out_of_range("omission index out of range");
    auto b = base_values(index);
    if (n == 1) return b.v1;
    if (i == 1) return b.v21;
    if (i == n) return b.v22;
    return -1;
}

int mu_injection_path(const OIInjection& j, const std::vector<int>& order, int index) {
    // track the current positions of the original coordinates
    std::vector<int> alive(j.n);
    for (int x = 0; x < j.n; ++x) alive[x] = x + 1;
    int val = 1;
    for (int c : order) {
        auto it = std::find(alive.begin(), alive.end(), c);
        if (it == alive.end()) throw std::invalid_argument("omission order is not a permutation of dropped coordinates");
        int pos = static_cast<int>(it - alive.begin()) + 1;
        val *= mu_omission_int(static_cast<int>(alive.size()), pos, index);
        alive.erase(it);
    }
    std::vector<int> kept(alive.begin(), alive.end());
    if (kept != j.v) throw std::invalid_argument("omission order does not realize the injection");
    return val;
}

int mu_injection_int(const OIInjection& j, int index) {
    // drop the unselected coordinates from the top down
    int val = 1, k = j.n;
    std::size_t sel = j.v.size();
    for (int x = j.n; x >= 1 && val != 0; --x) {
        if (sel > 0 && j.v[sel - 1] == x) {
            --sel;
            continue;
        }
        val *= mu_omission_int(k, x, index);
        --k;
    }
    return val;
}

int mu_transitive_int(const TransitiveMap& f, const MeasureSpec& spec) {
    if (static_cast<int>(f.inj.size()) != spec.r()) throw std::invalid_argument("measure/group shape mismatch");
    int v = 1;
    for (int t = 0; t < spec.r() && v != 0; ++t) v *= mu_injection_int(f.inj[t], spec.index[t]);
    return v;
}

int mu_symbol_int(const OrbitSymbol& x, const MeasureSpec& spec) {
    if (x.r != spec.r()) throw std::invalid_argument("measure/group shape mismatch");
    int v = 1;
    for (int t = 0; t < spec.r() && v != 0; ++t) v *= mu_injection_int(OIInjection{x[t], {}}, spec.index[t]);
    return v;
}

Scalar mu_omission(int n, int i, const MeasureSpec& spec, int factor) {
    return spec.scalar(mu_omission_int(n, i, spec.index.at(factor)));
}

Scalar mu_injection(const OIInjection& j, const MeasureSpec& spec, int factor) {
    return spec.scalar(mu_injection_int(j, spec.index.at(factor)));
}

Scalar mu_transitive(const TransitiveMap& f, const MeasureSpec& spec) { return spec.scalar(mu_transitive_int(f, spec)); }

Scalar mu_map(const GSetMap& f, const MeasureSpec& spec) {
    if (f.target.size() != 1) throw std::invalid_argument("mu_map needs a transitive target");
    long s = 0;
    for (auto& a : f.assign) s += mu_transitive_int(a.map, spec);
    return spec.scalar(s);
}

Scalar mu_object(const GSet& x, const MeasureSpec& spec) {
    long s = 0;
    for (auto& o : x.orbits) s += mu_symbol_int(o, spec);
    return spec.scalar(s);
}

namespace {

// all transitive maps between symbols with per-factor arities <= bound
std::vector<TransitiveMap> all_maps(int r, int bound) {
    std::vector<std::vector<std::pair<int, OIInjection>>> per(r);  // (source arity, injection)
    std::vector<std::pair<int, OIInjection>> one;
    for (int n = 0; n <= bound; ++n)
        for (int m = 0; m <= n; ++m)
            for (auto& j : enumerate_injections(m, n)) one.push_back({n, j});
    for (int t = 0; t < r; ++t) per[t] = one;
    std::vector<TransitiveMap> out;
    for_each_choice(per, [&](const std::vector<const std::pair<int, OIInjection>*>& pick) {
        TransitiveMap f{OrbitSymbol::point(r), OrbitSymbol::point(r), {}};
        for (int t = 0; t < r; ++t) {
            f.source.a[t] = pick[t]->first;
            f.target.a[t] = pick[t]->second.m();
            f.inj.push_back(pick[t]->second);
        }
        out.push_back(std::move(f));
    });
    return out;
}

std::string describe(const TransitiveMap& f) {
    std::string s = f.source.str() + "->" + f.target.str() + " via";
    for (auto& j : f.inj) s += " " + j.str();
    return s;
}

}  // namespace

AxiomReport check_measure_axioms(const MeasureSpec& spec, int bound) {
    AxiomReport rep;
    const int r = spec.r();
    auto maps = all_maps(r, bound);

    for (auto& f : maps) {
        if (f.is_identity() && mu_transitive_int(f, spec) != 1) {
            rep.pass = false;
            rep.counterexample = "isomorphism with measure != 1: " + describe(f);
            return rep;
        }
    }
    // multiplicativity over composable pairs
    for (auto& f : maps)
        for (auto& g : maps) {
            if (!(g.source == f.target)) continue;
            ++rep.compositions;
            int lhs = mu_transitive_int(f.then(g), spec);
            int rhs = mu_transitive_int(f, spec) * mu_transitive_int(g, spec);
            if (lhs != rhs) {
                rep.pass = false;
                rep.counterexample = "composition " + describe(f) + " then " + describe(g);
                return rep;
            }
        }
    // base-change additivity: mu(f) = sum over components of the pullback of f along g
    for (auto& f : maps)
        for (auto& g : maps) {
            if (!(g.target == f.target)) continue;
            ++rep.squares;
            GSet x = GSet::single(f.target);
            GSetMap fm{GSet::single(f.source), x, {{0, f}}};
            GSetMap gm{GSet::single(g.source), x, {{0, g}}};
            long sum = 0;
            for (auto& c : fiber_product(fm, gm)) sum += mu_transitive_int(c.slot_map(1), spec);
            if (sum != mu_transitive_int(f, spec)) {
                rep.pass = false;
                rep.counterexample = "base change of " + describe(f) + " along " + describe(g) + ": sum " +
                                     std::to_string(sum) + " vs " + std::to_string(mu_transitive_int(f, spec));
                return rep;
            }
        }
    return rep;
}

}  // namespace delannoy
