#include "delannoy/orbit.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace delannoy {

// --- symbols -------------------------------------------------------------

OrbitSymbol OrbitSymbol::point(int r) {
    if (r < 1 || r > kMaxFactors) throw std::invalid_argument("group shape out of range");
    OrbitSymbol s;
    s.r = r;
    return s;
}

OrbitSymbol OrbitSymbol::of(const std::vector<int>& ar) {
    OrbitSymbol s = point(static_cast<int>(ar.size()));
    for (std::size_t t = 0; t < ar.size(); ++t) {
        if (ar[t] < 0) throw std::invalid_argument("negative arity");
        s.a[t] = ar[t];
    }
    return s;
}

OrbitSymbol OrbitSymbol::basic(int r, int t, int n) {
    OrbitSymbol s = point(r);
    if (t < 0 || t >= r) throw std::invalid_argument("factor index out of range");
    s.a[t] = n;
    return s;
}

int OrbitSymbol::total() const {
    int s = 0;
    for (int t = 0; t < r; ++t) s += a[t];
    return s;
}

std::string OrbitSymbol::str() const {
    std::string s = "(";
    for (int t = 0; t < r; ++t) {
        if (t) s += ",";
        s += std::to_string(a[t]);
    }
    return s + ")";
}

bool OrbitSymbol::operator==(const OrbitSymbol& o) const {
    if (r != o.r) return false;
    for (int t = 0; t < r; ++t)
        if (a[t] != o.a[t]) return false;
    return true;
}

bool OrbitSymbol::operator<(const OrbitSymbol& o) const {
    if (r != o.r) return r < o.r;
    for (int t = 0; t < r; ++t)
        if (a[t] != o.a[t]) return a[t] < o.a[t];
    return false;
}

// --- injections ----------------------------------------------------------

OIInjection OIInjection::identity(int n) {
    OIInjection j;
    j.n = n;
    j.v.resize(n);
    std::iota(j.v.begin(), j.v.end(), 1);
    return j;
}

OIInjection OIInjection::omit(int n, int i) {
    if (i < 1 || i > n) throw std::out_of_range("omitted coordinate out of range");
    OIInjection j;
    j.n = n;
    for (int x = 1; x <= n; ++x)
        if (x != i) j.v.push_back(x);
    return j;
}

bool OIInjection::valid() const {
    int prev = 0;
    for (int x : v) {
        if (x <= prev || x > n) return false;
        prev = x;
    }
    return true;
}

OIInjection OIInjection::after(const OIInjection& k) const {
    if (k.n != m()) throw std::invalid_argument("injection composition size mismatch");
    OIInjection out;
    out.n = n;
    out.v.reserve(k.v.size());
    for (int x : k.v) out.v.push_back(v[x - 1]);
    return out;
}

std::string OIInjection::str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ">/" + std::to_string(n);
}

bool OIInjection::operator<(const OIInjection& o) const {
    if (n != o.n) return n < o.n;
    return v < o.v;
}

std::vector<OIInjection> enumerate_injections(int m, int n) {
    std::vector<OIInjection> out;
    if (m < 0 || n < 0 || m > n) return out;
    OIInjection cur;
    cur.n = n;
    std::function<void(int)> rec = [&](int next) {
        if (cur.m() == m) {
            out.push_back(cur);
            return;
        }
        for (int x = next; x <= n - (m - cur.m()) + 1; ++x) {
            cur.v.push_back(x);
            rec(x + 1);
            cur.v.pop_back();
        }
    };
    rec(1);
    return out;
}

// --- transitive maps -----------------------------------------------------

TransitiveMap TransitiveMap::identity(const OrbitSymbol& x) {
    TransitiveMap f{x, x, {}};
    for (int t = 0; t < x.r; ++t) f.inj.push_back(OIInjection::identity(x[t]));
    return f;
}

TransitiveMap TransitiveMap::to_point(const OrbitSymbol& x) {
    TransitiveMap f{x, OrbitSymbol::point(x.r), {}};
    for (int t = 0; t < x.r; ++t) f.inj.push_back(OIInjection{x[t], {}});
    return f;
}

bool TransitiveMap::valid() const {
    if (source.r != target.r || static_cast<int>(inj.size()) != source.r) return false;
    for (int t = 0; t < source.r; ++t) {
        if (inj[t].n != source[t] || inj[t].m() != target[t] || !inj[t].valid()) return false;
    }
    return true;
}

bool TransitiveMap::is_identity() const {
    for (auto& j : inj)
        if (!j.is_identity()) return false;
    return true;
}

TransitiveMap TransitiveMap::then(const TransitiveMap& g) const {
    if (!(g.source == target)) throw std::invalid_argument("transitive map composition mismatch");
    TransitiveMap h{source, g.target, {}};
    for (int t = 0; t < source.r; ++t) h.inj.push_back(inj[t].after(g.inj[t]));
    return h;
}

// --- G-sets --------------------------------------------------------------

std::string GSet::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        if (i) s += ", ";
        s += orbits[i].str();
    }
    return s + "]";
}

bool GSet::isomorphic(const GSet& o) const {
    if (r != o.r || size() != o.size()) return false;
    auto a = orbits, b = o.orbits;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

GSet concat(const GSet& a, const GSet& b) {
    if (a.r != b.r) throw std::invalid_argument("group shape mismatch");
    GSet c = a;
    c.orbits.insert(c.orbits.end(), b.orbits.begin(), b.orbits.end());
    return c;
}

GSetMap GSetMap::identity(const GSet& x) {
    GSetMap f{x, x, {}};
    for (std::size_t i = 0; i < x.size(); ++i) f.assign.push_back({i, TransitiveMap::identity(x[i])});
    return f;
}

GSetMap GSetMap::to_point(const GSet& x) {
    GSetMap f{x, GSet::point(x.r), {}};
    for (auto& o : x.orbits) f.assign.push_back({0, TransitiveMap::to_point(o)});
    return f;
}

bool GSetMap::valid() const {
    if (assign.size() != source.size()) return false;
    for (std::size_t i = 0; i < assign.size(); ++i) {
        auto& a = assign[i];
        if (a.target >= target.size()) return false;
        if (!(a.map.source == source[i]) || !(a.map.target == target[a.target]) || !a.map.valid()) return false;
    }
    return true;
}

GSetMap GSetMap::then(const GSetMap& g) const {
    GSetMap h{source, g.target, {}};
    for (auto& a : assign) {
        auto& b = g.assign.at(a.target);
        h.assign.push_back({b.target, a.map.then(b.map)});
    }
    return h;
}

// --- words ---------------------------------------------------------------

namespace {

bool mask_less(unsigned a, unsigned b) {
    while (a && b) {
        int la = __builtin_ctz(a), lb = __builtin_ctz(b);
        if (la != lb) return la < lb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

const std::vector<int>& rank_table() {
    static const std::vector<int> table = [] {
        std::vector<unsigned> masks(1u << kMaxSlots);
        std::iota(masks.begin(), masks.end(), 0u);
        std::sort(masks.begin(), masks.end(), mask_less);
        std::vector<int> rank(masks.size());
        for (std::size_t i = 0; i < masks.size(); ++i) rank[masks[i]] = static_cast<int>(i);
        return rank;
    }();
    return table;
}

}  // namespace

int letter_rank(Letter x) { return rank_table()[x]; }

bool word_less(const Word& a, const Word& b) {
    const auto& rk = rank_table();
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return rk[a[i]] < rk[b[i]];
    return a.size() < b.size();
}

std::string word_text(const Word& w, int slots) {
    std::string s;
    if (slots <= 2 && (s.empty() || s[0] != '{')) {
        for (Letter x : w) s += x == kL ? 'L' : x == kR ? 'R' : x == kB ? 'B' : '?';
        return s;
    }
    for (Letter x : w) {
        s += '{';
        bool first = true;
        for (int k = 0; k < slots; ++k)
            if (x >> k & 1) {
                if (!first) s += ',';
                s += std::to_string(k + 1);
                first = false;
            }
        s += '}';
    }
    return s;
}

Word parse_word(const std::string& s, int slots) {
    Word w;
    auto fail = [&](std::size_t pos, const std::string& what) {
        throw std::invalid_argument(what + " at position " + std::to_string(pos + 1) + " in pattern \"" + s + "\"");
    };
    if (slots <= 2 && (s.empty() || s[0] != '{')) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (c == 'L') w.push_back(kL);
            else if (c == 'R' && slots == 2) w.push_back(kR);
            else if (c == 'B' && slots == 2) w.push_back(kB);
            else fail(i, std::string("invalid letter '") + c + "'");
        }
        return w;
    }
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '{') fail(i, "expected '{'");
        ++i;
        Letter x = 0;
        bool need = true;
        while (i < s.size() && s[i] != '}') {
            if (s[i] == ',') {
                if (need) fail(i, "unexpected ','");
                need = true;
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i) fail(i, "expected slot number");
            int k = std::stoi(s.substr(i, j - i));
            if (k < 1 || k > slots) fail(i, "slot out of range");
            if (x >> (k - 1) & 1) fail(i, "repeated slot");
            x |= static_cast<Letter>(1u << (k - 1));
            need = false;
            i = j;
        }
        if (i >= s.size()) fail(i, "unterminated letter");
        if (x == 0 || need) fail(i, "empty letter");
        w.push_back(x);
        ++i;
    }
    return w;
}

std::vector<Word> merge_words(int n, int m) {
    std::vector<Word> out;
    if (n < 0 || m < 0) return out;
    std::vector<char> la(n, 0), ra(m, 0);
    anchored_merges(la, ra, [&](const std::vector<std::pair<int, int>>& steps) {
        Word w;
        w.reserve(steps.size());
        for (auto [i, j] : steps) w.push_back(static_cast<Letter>((i >= 0 ? kL : 0) | (j >= 0 ? kR : 0)));
        out.push_back(std::move(w));
    });
    std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
    return out;
}

std::vector<MergePattern> merge_patterns(int n, int m) {
    std::vector<MergePattern> out;
    for (auto& w : merge_words(n, m)) out.push_back({n, m, word_text(w, 2)});
    return out;
}

std::uint64_t delannoy_number(int n, int m) {
    if (n < 0 || m < 0) return 0;
    std::vector<std::vector<std::uint64_t>> d(n + 1, std::vector<std::uint64_t>(m + 1, 1));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= m; ++j) d[i][j] = d[i - 1][j] + d[i][j - 1] + d[i - 1][j - 1];
    return d[n][m];
}

// --- components ----------------------------------------------------------

OrbitSymbol Component::ambient() const {
    OrbitSymbol s = OrbitSymbol::point(r());
    for (int t = 0; t < r(); ++t) s.a[t] = static_cast<int>(words[t].size());
    return s;
}

OrbitSymbol Component::slot_symbol(int k) const {
    OrbitSymbol s = OrbitSymbol::point(r());
    for (int t = 0; t < r(); ++t) {
        int c = 0;
        for (Letter x : words[t]) c += x >> k & 1;
        s.a[t] = c;
    }
    return s;
}

OIInjection Component::slot_injection(int k, int t) const {
    OIInjection j;
    j.n = static_cast<int>(words[t].size());
    for (int p = 0; p < j.n; ++p)
        if (words[t][p] >> k & 1) j.v.push_back(p + 1);
    return j;
}

TransitiveMap Component::slot_map(int k) const {
    TransitiveMap f{ambient(), slot_symbol(k), {}};
    for (int t = 0; t < r(); ++t) f.inj.push_back(slot_injection(k, t));
    return f;
}

bool Component::is_diagonal() const {
    if (slots() != 2 || parents[0] != parents[1]) return false;
    for (auto& w : words)
        for (Letter x : w)
            if (x != kB) return false;
    return true;
}

Component Component::transposed() const {
    Component c = *this;
    std::swap(c.parents[0], c.parents[1]);
    for (auto& w : c.words)
        for (Letter& x : w) x = static_cast<Letter>((x & ~3u) | ((x & 1u) << 1) | ((x >> 1) & 1u));
    return c;
}

std::string Component::text() const {
    std::string s;
    for (int t = 0; t < r(); ++t) {
        if (t) s += '|';
        s += word_text(words[t], slots());
    }
    return s;
}

bool Component::operator<(const Component& o) const {
    if (parents != o.parents) return parents < o.parents;
    for (std::size_t t = 0; t < words.size() && t < o.words.size(); ++t) {
        if (words[t] != o.words[t]) return word_less(words[t], o.words[t]);
    }
    return words.size() < o.words.size();
}

std::size_t ComponentHash::operator()(const Component& c) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&](std::size_t v) { h = (h ^ v) * 1099511628211ull; };
    for (auto p : c.parents) mix(p);
    for (auto& w : c.words) {
        mix(0xffff);
        for (Letter x : w) mix(x);
    }
    return h;
}

// --- products ------------------------------------------------------------

std::vector<Component> product_decompose(const std::vector<GSet>& xs) {
    if (xs.empty()) throw std::invalid_argument("product_decompose needs at least one factor");
    const int r = xs[0].r;
    for (auto& x : xs)
        if (x.r != r) throw std::invalid_argument("group shape mismatch");
    if (static_cast<int>(xs.size()) > kMaxSlots) throw std::invalid_argument("too many product slots");

    std::vector<Component> cur;
    for (std::size_t i = 0; i < xs[0].size(); ++i) {
        Component c;
        c.parents = {static_cast<std::uint32_t>(i)};
        for (int t = 0; t < r; ++t) c.words.emplace_back(xs[0][i][t], Letter{1});
        cur.push_back(std::move(c));
    }
    for (std::size_t s = 1; s < xs.size(); ++s) {
        std::vector<Component> next;
        const Letter bit = static_cast<Letter>(1u << s);
        for (auto& c : cur) {
            for (std::size_t o = 0; o < xs[s].size(); ++o) {
                std::vector<std::vector<Word>> per(r);
                for (int t = 0; t < r; ++t) {
                    std::vector<char> la(c.words[t].size(), 0), ra(xs[s][o][t], 0);
                    anchored_merges(la, ra, [&](const std::vector<std::pair<int, int>>& steps) {
                        Word w;
                        w.reserve(steps.size());
                        for (auto [i, j] : steps)
                            w.push_back(static_cast<Letter>((i >= 0 ? c.words[t][i] : 0) | (j >= 0 ? bit : 0)));
                        per[t].push_back(std::move(w));
                    });
                }
                for_each_choice(per, [&](const std::vector<const Word*>& pick) {
                    Component d;
                    d.parents = c.parents;
                    d.parents.push_back(static_cast<std::uint32_t>(o));
                    for (auto* w : pick) d.words.push_back(*w);
                    next.push_back(std::move(d));
                });
            }
        }
        cur = std::move(next);
    }
    std::sort(cur.begin(), cur.end());
    return cur;
}

Projection project_component(const Component& c, const std::vector<int>& slots) {
    if (slots.empty()) throw std::invalid_argument("projection needs a nonempty slot list");
    Letter seen = 0;
    for (int k : slots) {
        if (k < 0 || k >= c.slots() || (seen >> k & 1)) throw std::invalid_argument("bad projection slots");
        seen |= static_cast<Letter>(1u << k);
    }
    Projection out;
    out.map.source = c.ambient();
    for (int k : slots) out.comp.parents.push_back(c.parents[k]);
    for (int t = 0; t < c.r(); ++t) {
        Word w;
        OIInjection j;
        j.n = static_cast<int>(c.words[t].size());
        for (int p = 0; p < j.n; ++p) {
            Letter x = c.words[t][p], y = 0;
            for (std::size_t q = 0; q < slots.size(); ++q)
                if (x >> slots[q] & 1) y |= static_cast<Letter>(1u << q);
            if (y) {
                w.push_back(y);
                j.v.push_back(p + 1);
            }
        }
        out.comp.words.push_back(std::move(w));
        out.map.inj.push_back(std::move(j));
    }
    out.map.target = out.comp.ambient();
    return out;
}

std::vector<Component> fiber_product(const GSetMap& f, const GSetMap& g) {
    if (!(f.target == g.target)) throw std::invalid_argument("fiber product needs a common target");
    const int r = f.target.r;
    std::vector<Component> out;
    for (std::size_t a = 0; a < f.assign.size(); ++a) {
        for (std::size_t b = 0; b < g.assign.size(); ++b) {
            if (f.assign[a].target != g.assign[b].target) continue;
            const auto& u = f.assign[a].map;
            const auto& v = g.assign[b].map;
            std::vector<std::vector<Word>> per(r);
            for (int t = 0; t < r; ++t) {
                std::vector<char> la(u.source[t], 0), ra(v.source[t], 0);
                for (int x : u.inj[t].v) la[x - 1] = 1;
                for (int x : v.inj[t].v) ra[x - 1] = 1;
                anchored_merges(la, ra, [&](const std::vector<std::pair<int, int>>& steps) {
                    Word w;
                    w.reserve(steps.size());
                    for (auto [i, j] : steps) w.push_back(static_cast<Letter>((i >= 0 ? kL : 0) | (j >= 0 ? kR : 0)));
                    per[t].push_back(std::move(w));
                });
            }
            for_each_choice(per, [&](const std::vector<const Word*>& pick) {
                Component c;
                c.parents = {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
                for (auto* w : pick) c.words.push_back(*w);
                out.push_back(std::move(c));
            });
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Projection image_factorization(const TransitiveMap& left, std::uint32_t left_parent, const TransitiveMap& right,
                               std::uint32_t right_parent) {
    if (!(left.source == right.source)) throw std::invalid_argument("span legs must share a source");
    Projection out;
    out.comp.parents = {left_parent, right_parent};
    out.map.source = left.source;
    for (int t = 0; t < left.source.r; ++t) {
        int q = left.source[t];
        std::vector<Letter> mark(q, 0);
        for (int x : left.inj[t].v) mark[x - 1] |= kL;
        for (int x : right.inj[t].v) mark[x - 1] |= kR;
        Word w;
        OIInjection j;
        j.n = q;
        for (int p = 0; p < q; ++p)
            if (mark[p]) {
                w.push_back(mark[p]);
                j.v.push_back(p + 1);
            }
        out.comp.words.push_back(std::move(w));
        out.map.inj.push_back(std::move(j));
    }
    out.map.target = out.comp.ambient();
    return out;
}

Component flatten(const Component& outer, const std::vector<const Component*>& inner) {
    if (static_cast<int>(inner.size()) != outer.slots()) throw std::invalid_argument("flatten arity mismatch");
    Component out;
    std::vector<int> offset(inner.size(), 0);
    int total = 0;
    for (std::size_t k = 0; k < inner.size(); ++k) {
        offset[k] = total;
        total += inner[k]->slots();
        out.parents.insert(out.parents.end(), inner[k]->parents.begin(), inner[k]->parents.end());
    }
    if (total > kMaxSlots) throw std::invalid_argument("too many slots after flattening");
    for (int t = 0; t < outer.r(); ++t) {
        std::vector<std::size_t> idx(inner.size(), 0);
        Word w;
        w.reserve(outer.words[t].size());
        for (Letter x : outer.words[t]) {
            unsigned y = 0;
            for (std::size_t k = 0; k < inner.size(); ++k)
                if (x >> k & 1) y |= static_cast<unsigned>(inner[k]->words[t].at(idx[k]++)) << offset[k];
            w.push_back(static_cast<Letter>(y));
        }
        out.words.push_back(std::move(w));
    }
    return out;
}

}  // namespace delannoy
