#include "drinfeld/intlinalg.hpp"

#include <algorithm>

namespace drinfeld {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

std::size_t columns(const BigMatrix& m) {
    std::size_t c = m.empty() ? 0 : m[0].size();
    for (const auto& row : m)
        if (row.size() != c)
            throw DomainError("ragged matrix");
    return c;
}

}  // namespace

bool SmithForm::unimodular() const {
    return std::all_of(invariants.begin(), invariants.end(), [](const Integer& x) { return x == 1; });
}

SmithForm smith_normal_form(BigMatrix m) {
    const std::size_t rows = m.size(), cols = columns(m);
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows)
            break;
        std::swap(m[t], m[pr]);
        for (auto& row : m)
            std::swap(row[t], row[pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0)
                    continue;
                Integer q = floor_div(m[i][t], m[t][t]);
                for (std::size_t j = t; j < cols; ++j)
                    m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0)
                    continue;
                Integer q = floor_div(m[t][j], m[t][t]);
                for (std::size_t i = t; i < rows; ++i)
                    m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (auto& row : m)
                        std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                // Divisibility: fold any offending entry into the pivot row.
                for (std::size_t i = t + 1; i < rows && clean; ++i)
                    for (std::size_t j = t + 1; j < cols; ++j)
                        if (m[i][j] % m[t][t] != 0) {
                            for (std::size_t c = t; c < cols; ++c)
                                m[t][c] += m[i][c];
                            clean = false;
                            break;
                        }
            }
        }
        ++t;
    }
    SmithForm s;
    for (std::size_t i = 0; i < t; ++i)
        s.invariants.push_back(abs(m[i][i]));
    return s;
}

int integer_rank(const BigMatrix& m) { return smith_normal_form(m).rank(); }

BigMatrix hermite_normal_form(BigMatrix m) {
    const std::size_t rows = m.size(), cols = columns(m);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // Euclid down the column until one nonzero entry remains.
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (m[i][c] != 0 && (best == rows || abs(m[i][c]) < abs(m[best][c])))
                    best = i;
            if (best == rows)
                break;
            std::swap(m[r], m[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0)
                    continue;
                Integer q = floor_div(m[i][c], m[r][c]);
                for (std::size_t j = c; j < cols; ++j)
                    m[i][j] -= q * m[r][j];
                done = done && m[i][c] == 0;
            }
            if (done)
                break;
        }
        if (m[r][c] == 0)
            continue;
        if (m[r][c] < 0)
            for (auto& x : m[r])
                x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(m[i][c], m[r][c]);
            if (q != 0)
                for (std::size_t j = c; j < cols; ++j)
                    m[i][j] -= q * m[r][j];
        }
        ++r;
    }
    m.resize(r);
    return m;
}

bool in_row_span(const BigMatrix& m, const BigVector& v) {
    BigMatrix h = hermite_normal_form(m);
    if (!h.empty() && h[0].size() != v.size())
        throw DomainError("dimension mismatch in in_row_span");
    BigVector w = v;
    for (const auto& row : h) {
        std::size_t c = 0;
        while (row[c] == 0)
            ++c;
        if (w[c] % row[c] != 0)
            return false;
        Integer q = w[c] / row[c];
        for (std::size_t j = c; j < w.size(); ++j)
            w[j] -= q * row[j];
    }
    return std::all_of(w.begin(), w.end(), [](const Integer& x) { return x == 0; });
}

}  // namespace drinfeld
