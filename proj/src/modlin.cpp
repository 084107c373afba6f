#include "modlin.hpp"

#include <stdexcept>

namespace mvc::modlin {

namespace {
i64 norm(i64 a, i64 m) {
    a %= m;
    if (a < 0) a += m;
    return a;
}
}  // namespace

i64 mod_inverse(i64 a, i64 m) {
    a = norm(a, m);
    // extended Euclid; gcd(a, m) must be 1
    i64 old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
        i64 q = old_r / r;
        i64 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw std::domain_error("mod_inverse: not a unit");
    return norm(old_s, m);
}

std::optional<std::vector<i64>> solve(Mat A, std::vector<i64> b, i64 m,
                                      i64 p) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows == 0 ? 0 : A[0].size();
    for (auto& row : A)
        for (auto& v : row) v = norm(v, m);
    for (auto& v : b) v = norm(v, m);
    const Mat A0 = A;
    const std::vector<i64> b0 = b;

    std::vector<std::size_t> pivot_col;  // pivot column of eliminated row i
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = SIZE_MAX;
        for (std::size_t r = rank; r < rows; ++r) {
            if (A[r][col] % p != 0) {
                piv = r;
                break;
            }
        }
        if (piv == SIZE_MAX) continue;
        std::swap(A[piv], A[rank]);
        std::swap(b[piv], b[rank]);
        i64 inv = mod_inverse(A[rank][col], m);
        for (std::size_t j = 0; j < cols; ++j)
            A[rank][j] = norm(A[rank][j] * inv, m);
        b[rank] = norm(b[rank] * inv, m);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            i64 f = A[r][col];
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j)
                A[r][j] = norm(A[r][j] - f * A[rank][j], m);
            b[r] = norm(b[r] - f * b[rank], m);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<i64> x(cols, 0);
    for (std::size_t i = 0; i < rank; ++i) x[pivot_col[i]] = b[i];
    // verify against the original system; free variables were set to zero
    for (std::size_t r = 0; r < rows; ++r) {
        i64 acc = 0;
        for (std::size_t j = 0; j < cols; ++j)
            acc = norm(acc + A0[r][j] * x[j], m);
        if (acc != b0[r]) return std::nullopt;
    }
    return x;
}

}  // namespace mvc::modlin
