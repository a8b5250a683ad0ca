#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace delannoy {

constexpr int kMaxFactors = 4;
constexpr int kMaxSlots = 16;

// Transitive G^r-set R^(n_1) x ... x R^(n_r).
struct OrbitSymbol {
    int r = 1;
    std::array<int, kMaxFactors> a{};

    static OrbitSymbol point(int r);
    static OrbitSymbol of(const std::vector<int>& arities);
    static OrbitSymbol basic(int r, int t, int n = 1);  // R^(n) in factor t (0-based)

    int operator[](int t) const { return a[t]; }
    int total() const;
    bool is_point() const { return total() == 0; }
    std::string str() const;

    bool operator==(const OrbitSymbol& o) const;
    bool operator<(const OrbitSymbol& o) const;
};

// Strictly increasing map [m] -> [n]; values are 1-based.
struct OIInjection {
    int n = 0;
    std::vector<int> v;

    int m() const { return static_cast<int>(v.size()); }
    static OIInjection identity(int n);
    static OIInjection omit(int n, int i);  // p_{n,i}: [n-1] -> [n] skipping i
    bool valid() const;
    bool is_identity() const { return m() == n; }
    // (this o k)(x) = this(k(x)); k maps into [m()]
    OIInjection after(const OIInjection& k) const;
    std::string str() const;
    bool operator==(const OIInjection&) const = default;
    bool operator<(const OIInjection& o) const;
};

std::vector<OIInjection> enumerate_injections(int m, int n);

// Coordinate selection R^(source) -> R^(target), one injection per factor
// mapping target coordinates into source coordinates.
struct TransitiveMap {
    OrbitSymbol source, target;
    std::vector<OIInjection> inj;

    static TransitiveMap identity(const OrbitSymbol& x);
    static TransitiveMap to_point(const OrbitSymbol& x);
    bool valid() const;
    bool is_identity() const;
    // (g o f): first this, then g
    TransitiveMap then(const TransitiveMap& g) const;
    bool operator==(const TransitiveMap& o) const { return source == o.source && target == o.target && inj == o.inj; }
};

struct GSet {
    int r = 1;
    std::vector<OrbitSymbol> orbits;

    static GSet single(const OrbitSymbol& x) { return GSet{x.r, {x}}; }
    static GSet point(int r) { return GSet{r, {OrbitSymbol::point(r)}}; }
    std::size_t size() const { return orbits.size(); }
    bool empty() const { return orbits.empty(); }
    const OrbitSymbol& operator[](std::size_t i) const { return orbits[i]; }
    std::string str() const;
    bool operator==(const GSet& o) const { return r == o.r && orbits == o.orbits; }
    bool isomorphic(const GSet& o) const;  // multiset equality of symbols
};

GSet concat(const GSet& a, const GSet& b);

struct GSetMap {
    struct Assign {
        std::size_t target;
        TransitiveMap map;
    };
    GSet source, target;
    std::vector<Assign> assign;  // one per source orbit

    static GSetMap identity(const GSet& x);
    static GSetMap to_point(const GSet& x);
    bool valid() const;
    GSetMap then(const GSetMap& g) const;
};

// Letters are slot bitmasks (bit k = slot k). Letters order by the
// lexicographic order of their sorted slot lists, which for two slots is
// L = {1} < B = {1,2} < R = {2}.
using Letter = std::uint16_t;
using Word = std::vector<Letter>;

constexpr Letter kL = 1, kR = 2, kB = 3;

int letter_rank(Letter x);
bool word_less(const Word& a, const Word& b);
std::string word_text(const Word& w, int slots);
// Parses "LBR" (two slots) or "{1}{1,2}{2}"; throws std::invalid_argument with position.
Word parse_word(const std::string& s, int slots);

struct MergePattern {
    int n = 0, m = 0;
    std::string word;
};

// All covering words over {L,B,R}, by length then lexicographically.
std::vector<MergePattern> merge_patterns(int n, int m);
std::vector<Word> merge_words(int n, int m);  // same set, as two-slot words, same order

std::uint64_t delannoy_number(int n, int m);

// An orbit of a product of transitive sets. parents[k] is the orbit index of
// slot k in its factor G-set; words[t] is the pattern in group factor t.
struct Component {
    std::vector<std::uint32_t> parents;
    std::vector<Word> words;

    int slots() const { return static_cast<int>(parents.size()); }
    int r() const { return static_cast<int>(words.size()); }
    OrbitSymbol ambient() const;
    OrbitSymbol slot_symbol(int k) const;
    OIInjection slot_injection(int k, int t) const;
    TransitiveMap slot_map(int k) const;
    bool is_diagonal() const;  // two slots, same orbit, all letters B
    Component transposed() const;  // two slots swapped
    std::string text() const;  // words joined by '|'

    bool operator==(const Component& o) const { return parents == o.parents && words == o.words; }
    bool operator<(const Component& o) const;
};

struct ComponentHash {
    std::size_t operator()(const Component& c) const;
};

// Visits every interleaving of a left and a right coordinate list in which
// anchored entries coincide pairwise in order and free entries merge freely.
// Each step is (left index or -1, right index or -1).
namespace detail {
template <class F>
void merge_rec(const std::vector<char>& la, const std::vector<char>& ra, int i, int j,
               std::vector<std::pair<int, int>>& buf, F& emit) {
    const int nl = static_cast<int>(la.size()), nr = static_cast<int>(ra.size());
    const bool lend = i == nl, rend = j == nr;
    if (lend && rend) {
        emit(static_cast<const std::vector<std::pair<int, int>>&>(buf));
        return;
    }
    const bool lfree = !lend && !la[i], rfree = !rend && !ra[j];
    if (!lend && !rend && la[i] && ra[j]) {
        buf.emplace_back(i, j);
        merge_rec(la, ra, i + 1, j + 1, buf, emit);
        buf.pop_back();
        return;
    }
    if (lfree) {
        buf.emplace_back(i, -1);
        merge_rec(la, ra, i + 1, j, buf, emit);
        buf.pop_back();
    }
    if (lfree && rfree) {
        buf.emplace_back(i, j);
        merge_rec(la, ra, i + 1, j + 1, buf, emit);
        buf.pop_back();
    }
    if (rfree) {
        buf.emplace_back(-1, j);
        merge_rec(la, ra, i, j + 1, buf, emit);
        buf.pop_back();
    }
}
}  // namespace detail

template <class F>
void anchored_merges(const std::vector<char>& left_anchor, const std::vector<char>& right_anchor, F&& emit) {
    std::vector<std::pair<int, int>> buf;
    buf.reserve(left_anchor.size() + right_anchor.size());
    detail::merge_rec(left_anchor, right_anchor, 0, 0, buf, emit);
}

// Components of the cartesian product, in canonical order.
std::vector<Component> product_decompose(const std::vector<GSet>& xs);

struct Projection {
    Component comp;
    TransitiveMap map;  // ambient of the source component -> ambient of comp
};

// Slots are 0-based and kept in the given order.
Projection project_component(const Component& c, const std::vector<int>& slots);

// Components of source(f) x source(g) lying over the same point of the
// common target; slot 0 indexes source(f), slot 1 source(g).
std::vector<Component> fiber_product(const GSetMap& f, const GSetMap& g);

// Image of the span (left, right) out of one orbit; the result is a
// two-slot component with the given parents plus the surjection onto it.
Projection image_factorization(const TransitiveMap& left, std::uint32_t left_parent, const TransitiveMap& right,
                               std::uint32_t right_parent);

// Substitutes inner components into the slots of an outer pattern whose
// slot k ranges over the ambient of inner[k]; slots are concatenated.
Component flatten(const Component& outer, const std::vector<const Component*>& inner);

// Cartesian product helper over per-factor choices.
template <class T, class F>
void for_each_choice(const std::vector<std::vector<T>>& choices, F&& f) {
    std::vector<const T*> pick(choices.size());
    for (auto& c : choices)
        if (c.empty()) return;
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
        for (std::size_t i = 0; i < choices.size(); ++i) pick[i] = &choices[i][idx[i]];
        f(pick);
        std::size_t k = choices.size();
        while (k > 0) {
            --k;
            if (++idx[k] < choices[k].size()) break;
            idx[k] = 0;
            if (k == 0) return;
        }
        if (choices.empty()) return;
    }
}

}  // namespace delannoy
