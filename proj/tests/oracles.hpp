#pragma once
// Brute-force references used by the unit and acceptance tests. Nothing here
// calls into the library's composition or elimination code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// Lattice paths with steps (1,0), (0,1), (1,1).
inline std::uint64_t delannoy(int n, int m) {
    std::vector<std::vector<std::uint64_t>> d(n + 1, std::vector<std::uint64_t>(m + 1, 1));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= m; ++j) d[i][j] = d[i - 1][j] + d[i][j - 1] + d[i - 1][j - 1];
    return d[n][m];
}

// A configuration of increasing tuples with values in 1..k using every value.
using Config = std::vector<std::vector<int>>;

// All orbits of R^(a_1) x ... x R^(a_s) as normalized configurations.
inline std::vector<Config> orbits(const std::vector<int>& arity) {
    int total = 0;
    for (int a : arity) total += a;
    std::vector<Config> out;
    for (int k = 0; k <= total; ++k) {
        // choose each tuple as a k-subset of size a_i, keep those covering 1..k
        std::vector<std::vector<std::vector<int>>> choices;
        for (int a : arity) {
            std::vector<std::vector<int>> subs;
            std::vector<int> mask(k, 0);
            std::fill(mask.begin(), mask.begin() + std::min(a, k), 1);
            if (a > k) {
                choices.push_back({});
                continue;
            }
            std::sort(mask.begin(), mask.end());
            do {
                std::vector<int> s;
                for (int i = 0; i < k; ++i)
                    if (mask[i]) s.push_back(i + 1);
                subs.push_back(s);
            } while (std::next_permutation(mask.begin(), mask.end()));
            choices.push_back(subs);
        }
        std::vector<std::size_t> idx(arity.size(), 0);
        bool empty = std::any_of(choices.begin(), choices.end(), [](auto& c) { return c.empty(); });
        if (empty) continue;
        while (true) {
            Config c;
            std::vector<char> used(k + 1, 0);
            for (std::size_t i = 0; i < arity.size(); ++i) {
                c.push_back(choices[i][idx[i]]);
                for (int v : c.back()) used[v] = 1;
            }
            bool cover = true;
            for (int v = 1; v <= k; ++v) cover = cover && used[v];
            if (cover) out.push_back(c);
            std::size_t t = arity.size();
            bool done = true;
            while (t > 0) {
                --t;
                if (++idx[t] < choices[t].size()) {
                    done = false;
                    break;
                }
                idx[t] = 0;
            }
            if (done) break;
        }
    }
    return out;
}

// Two-slot word of a pair of increasing tuples: L only left, R only right, B both.
inline std::string word(const std::vector<int>& x, const std::vector<int>& y) {
    std::set<int> all(x.begin(), x.end());
    all.insert(y.begin(), y.end());
    std::string w;
    for (int v : all) {
        bool l = std::count(x.begin(), x.end(), v) > 0, r = std::count(y.begin(), y.end(), v) > 0;
        w += l && r ? 'B' : (l ? 'L' : 'R');
    }
    return w;
}

// Measure of forgetting `drop` of the n coordinates of R^(n), one at a time
// from the top, with omission values from the table rows (v1, v21, v22).
// Interior omissions are -1, read off the fiber product of p_{2,2} with itself.
inline int omit_measure(int n, std::vector<int> drop, int v1, int v21, int v22) {
    std::sort(drop.rbegin(), drop.rend());
    int val = 1, cur = n;
    for (int d : drop) {
        int pos = d;  // positions above d are gone already, so d keeps its index
        int m = cur == 1 ? v1 : (pos == 1 ? v21 : (pos == cur ? v22 : -1));
        val *= m;
        --cur;
    }
    return val;
}

// Coefficients of A_W o A_V for W on Z x Y and V on Y x X, given as words,
// over a single factor with the given table row.
inline std::map<std::string, long> compose(const std::string& w, const std::string& v, int v1, int v21, int v22) {
    int c = 0, b = 0, a = 0;
    for (char x : w) {
        c += x != 'R';
        b += x != 'L';
    }
    for (char x : v) a += x != 'L';
    std::map<std::string, long> out;
    for (auto& cfg : orbits({c, b, a})) {
        if (word(cfg[0], cfg[1]) != w || word(cfg[1], cfg[2]) != v) continue;
        std::set<int> zx(cfg[0].begin(), cfg[0].end());
        zx.insert(cfg[2].begin(), cfg[2].end());
        int k = 0;
        for (auto& t : cfg)
            for (int x : t) k = std::max(k, x);
        std::vector<int> drop;
        for (int x = 1; x <= k; ++x)
            if (!zx.count(x)) drop.push_back(x);
        long m = omit_measure(k, drop, v1, v21, v22);
        if (m) out[word(cfg[0], cfg[2])] += m;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

// Rank by plain Gaussian elimination over Q.
inline std::size_t rank(std::vector<std::vector<mpq_class>> a) {
    std::size_t r = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            mpq_class f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace oracle
