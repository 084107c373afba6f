#ifndef MVCHAIN_CODES_HPP
#define MVCHAIN_CODES_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mvchain/ambient.hpp"

namespace mvc {

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

using DecompositionPtr = std::shared_ptr<const Decomposition>;

/// Per-summand chain parameters: (i, c) = (n, 0) marks the zero component,
/// otherwise 0 <= i <= n-1, 0 <= c <= k-1. The combined level i*k + c in
/// [0, n*k] makes inclusion a single comparison.
struct CodeParams {
    std::vector<std::pair<int, int>> ic;

    friend bool operator==(const CodeParams& a, const CodeParams& b) {
        return a.ic == b.ic;
    }
    friend bool operator!=(const CodeParams& a, const CodeParams& b) {
        return !(a == b);
    }
};

int params_level(const std::pair<int, int>& ic, int k);
std::pair<int, int> level_to_params(int level, int k, int n);

/// An ideal of the ambient: canonical per-summand parameters plus the
/// generator family H_1, ..., H_n with K = <H_1, p H_2, ..., p^{n-1} H_n>
/// = <sum p^i H_{i+1}>.
struct Code {
    DecompositionPtr dec;
    CodeParams params;
    std::vector<MultiPoly> summand_generators;  // p^i * uniformizer^c * e
    std::vector<MultiPoly> h_family;            // H_1 ... H_n
    MultiPoly single_generator;
};

Code code_from_params(const DecompositionPtr& dec, const CodeParams& params);
CodeParams params_from_generators(const Decomposition& dec,
                                  const std::vector<MultiPoly>& gens);
Code code_from_generators(const DecompositionPtr& dec,
                          const std::vector<MultiPoly>& gens);

/// |K| = q^{sum delta*(n*k - c - i*k)}, q the residue field size of the base
/// ring and delta = |C| * deg g.
std::uint64_t cardinality(const Decomposition& dec, const CodeParams& params);
/// prod over summands of (n*k + 1).
std::uint64_t count_codes(const Decomposition& dec);

/// All parameter tuples, lexicographic over summands then levels.
std::vector<CodeParams> enumerate_codes(const Decomposition& dec,
                                        std::uint64_t cap = 1000000);

bool membership(const Code& code, const MultiPoly& x);

/// Streams every codeword exactly once: per summand, chain-level digit
/// expansions over the residue transversal, glued across summands by the
/// idempotent resolution.
class CodewordIter {
  public:
    explicit CodewordIter(const Code& code, std::uint64_t cap = 1u << 24);
    std::uint64_t total() const { return total_; }
    std::optional<MultiPoly> next();

  private:
    const Code& code_;
    std::uint64_t total_ = 1;
    bool done_ = false;
    // terms_[d] lists the choices for digit d (element already multiplied by
    // the relevant uniformizer power); digits_ is the odometer
    std::vector<std::vector<MultiPoly>> terms_;
    std::vector<std::size_t> digits_;
};

/// The trace-defined Z/4Z code whose ambient Z4[X1,X2]/<X1^{2^m-1}-1,
/// X2^2-1> is modular but not a principal ideal ring.
struct KerdockCode {
    AmbientPtr amb;
    Extension S;       // GR(4, m) over Z/4Z
    GRElement lambda;  // Teichmuller generator of S
};

KerdockCode generalized_kerdock(int m);
MultiPoly kerdock_codeword(const KerdockCode& kc, const GRElement& xi,
                           std::int64_t beta);
/// Additive generating set: codewords of the Z/4Z-basis of the (xi, beta)
/// parameter space.
std::vector<MultiPoly> kerdock_generators(const KerdockCode& kc);

}  // namespace mvc

#endif
