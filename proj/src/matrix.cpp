#include "delannoy/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace delannoy {

Matrix::Matrix(std::size_t r, std::size_t c, Field f) : rows(r), cols(c), field(f), a(r * c, Scalar(0, f)) {}

std::string Matrix::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows; ++i) {
        os << "[";
        for (std::size_t j = 0; j < cols; ++j) os << (j ? " " : "") << at(i, j);
        os << "]\n";
    }
    return os.str();
}

namespace {

// Eliminates on the first `ncols` columns of m (the rest ride along).
// Returns pivot columns; rows beyond the pivot count are zero on those columns.
std::vector<std::size_t> bareiss(Matrix& m, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    Scalar prev(1, m.field);
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m.at(p, c).is_zero()) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        const Scalar piv = m.at(r, c);
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            const Scalar f = m.at(i, c);
            for (std::size_t j = c + 1; j < m.cols; ++j) m.at(i, j) = (piv * m.at(i, j) - f * m.at(r, j)) / prev;
            m.at(i, c) = Scalar(0, m.field);
        }
        // columns left of c in lower rows are already zero
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const Matrix& m) {
    Matrix w = m;
    return bareiss(w, w.cols).size();
}

SolveResult solve(const Matrix& A, const std::vector<Scalar>& b) {
    if (b.size() != A.rows) throw std::invalid_argument("solve: right-hand side size mismatch");
    const std::size_t n = A.cols, m = A.rows;
    Matrix w(m, n + 1 + m, A.field);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) w.at(i, j) = A.at(i, j);
        w.at(i, n) = b[i];
        w.at(i, n + 1 + i) = Scalar(1, A.field);
    }
    auto piv = bareiss(w, n);
    SolveResult res;
    for (std::size_t i = piv.size(); i < m; ++i) {
        if (!w.at(i, n).is_zero()) {
            res.solvable = false;
            for (std::size_t k = 0; k < m; ++k) res.certificate.push_back(w.at(i, n + 1 + k));
            return res;
        }
    }
    res.solvable = true;
    res.x.assign(n, Scalar(0, A.field));
    for (std::size_t k = piv.size(); k-- > 0;) {
        std::size_t c = piv[k];
        Scalar s = w.at(k, n);
        for (std::size_t j = c + 1; j < n; ++j)
            if (!w.at(k, j).is_zero()) s -= w.at(k, j) * res.x[j];
        res.x[c] = s / w.at(k, c);
    }
    return res;
}

}  // namespace delannoy
