// Dense linear algebra over Z/p^nZ. Pivots are chosen among entries that
// are units mod p, which always exist for the full-rank systems produced by
// Galois-ring embeddings.
#ifndef MVCHAIN_MODLIN_HPP
#define MVCHAIN_MODLIN_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace mvc::modlin {

using i64 = std::int64_t;
using Mat = std::vector<std::vector<i64>>;  // row major

i64 mod_inverse(i64 a, i64 m);  // a must be a unit mod m

/// Solve A x = b over Z/mZ (m = p^n), A rows x cols. Returns one solution
/// or nullopt when elimination cannot find a unit pivot for some column
/// with a nonzero residual.
std::optional<std::vector<i64>> solve(Mat A, std::vector<i64> b, i64 m,
                                      i64 p);

}  // namespace mvc::modlin

#endif
