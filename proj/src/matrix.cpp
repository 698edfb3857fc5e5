#include "nefcone/matrix.hpp"

namespace nefcone {

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            r(i, j) = Rational(m(i, j));
        }
    }
    return r;
}

IntMatrix to_integer(const RatMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            r(i, j) = to_integer(m(i, j));
        }
    }
    return r;
}

RatMatrix from_columns(const std::vector<RatVector>& columns, std::size_t rows) {
    RatMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) {
            throw DimensionError("column " + std::to_string(j) + " has length " + std::to_string(columns[j].size()) +
                                 ", expected " + std::to_string(rows));
        }
        for (std::size_t i = 0; i < rows; ++i) {
            m(i, j) = columns[j][i];
        }
    }
    return m;
}

namespace {

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) {
            ++p;
        }
        if (p == m.rows()) {
            continue;
        }
        if (p != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                std::swap(m(p, j), m(r, j));
            }
        }
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) {
            m(r, j) *= inv;
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) {
                continue;
            }
            const Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) {
                m(i, j) -= f * m(r, j);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

std::size_t rank(const RatMatrix& m) {
    RatMatrix work = m;
    return row_reduce(work).size();
}

Rational determinant(const RatMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("determinant of a non-square matrix");
    }
    RatMatrix a = m;
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) {
            ++p;
        }
        if (p == n) {
            return 0;
        }
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
            }
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) {
                continue;
            }
            const Rational f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) {
                a(i, j) -= f * a(c, j);
            }
        }
    }
    return det;
}

Integer determinant(const IntMatrix& m) {
    return to_integer(determinant(to_rational(m)));
}

std::optional<RatVector> solve_full_column_rank(const RatMatrix& a, const RatVector& b) {
    if (b.size() != a.rows()) {
        throw DimensionError("right-hand side has length " + std::to_string(b.size()) + ", expected " +
                             std::to_string(a.rows()));
    }
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            aug(i, j) = a(i, j);
        }
        aug(i, a.cols()) = b[i];
    }
    const auto pivots = row_reduce(aug);
    std::size_t column_pivots = 0;
    for (auto c : pivots) {
        if (c == a.cols()) {
            return std::nullopt;
        }
        ++column_pivots;
    }
    if (column_pivots != a.cols()) {
        throw PreconditionError("columns are linearly dependent (rank " + std::to_string(column_pivots) + " < " +
                                std::to_string(a.cols()) + ")");
    }
    RatVector x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        x[pivots[i]] = aug(i, a.cols());
    }
    return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("inverse of a non-square matrix");
    }
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = m(i, j);
        }
        aug(i, n + i) = 1;
    }
    const auto pivots = row_reduce(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) {
        return std::nullopt;
    }
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inv(i, j) = aug(i, n + j);
        }
    }
    return inv;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("inverse of a non-square matrix");
    }
    const Integer det = determinant(m);
    if (det != 1 && det != -1) {
        throw PreconditionError("matrix is not unimodular (determinant " + to_string(det) + ")");
    }
    return to_integer(*inverse(to_rational(m)));
}

std::string to_string(const IntMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i == 0 ? "[" : ", [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j != 0) {
                out += ", ";
            }
            out += m(i, j).get_str();
        }
        out += "]";
    }
    return out + "]";
}

} // namespace nefcone
