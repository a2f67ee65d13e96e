#pragma once

// Exact simulation of block-cyclic perturbed shifts on sparse vectors. The
// operator acts on basis vectors as
//
//   T e_k = w_{k+1} e_{k+1}                 inside a block,
//   T e_{top(n)} = v_n e_{start(phi(n))} - 2^{-delta_n} e_{start(n)}
//
// (the first block has no v term). Weights double on the first delta_n
// interior positions of each block and are 1 afterwards, so the interior
// product is 2^{delta_n} and all coefficients live in the dyadic rationals.
// Mass never moves to a higher block (phi(n) < n), which is what makes the
// per-block compression P_l T P_l a signed weighted cyclic shift and gives
// the closed-form orbit norms used by the audits.

#include <cstdint>
#include <optional>
#include <vector>

#include "udense/audit_report.hpp"
#include "udense/dyadic.hpp"
#include "udense/index_set.hpp"
#include "udense/sparse_vector.hpp"

namespace udense {

// Two-valued-weight generator data: level k >= 0 supplies the block length
// Delta[k], the doubled prefix delta[k] and the leak scale tau[k] (the level-0
// tau exists only to keep the arrays aligned; no block reads it).
struct CPlusOneLevels {
    std::vector<std::uint64_t> delta;
    std::vector<std::uint64_t> Delta;
    std::vector<std::uint64_t> tau;
};

// Applies the half rule tau = delta / 2 (delta must be even from level 1 on;
// level 0 rounds up, it is never consumed).
CPlusOneLevels make_half_delta_levels(std::vector<std::uint64_t> delta,
                                      std::vector<std::uint64_t> Delta);

// Level of block n: block 0 is its own level, blocks [2^{k-1}, 2^k) sit at
// level k.
std::uint64_t block_level(std::uint64_t n);

class CTypeOperator {
  public:
    struct BlockSpec {
        std::uint64_t length = 0; // b_{n+1} - b_n
        std::uint64_t delta = 0;  // weight 2 at interior offsets 1..delta
        std::uint64_t phi = 0;    // receiving block of the leak term
        Dyadic v;                 // leak coefficient (ignored for block 0)
    };
    struct Block : BlockSpec {
        std::uint64_t start = 0; // b_n
        std::uint64_t level = 0; // generator level, 0 when hand-built
    };

    // Hand-assembled finite family. Checks phi(n) < n, delta < length, the
    // doubling condition length(n) % (2 length(phi(n))) == 0 for n >= 1, and
    // a nonzero leak coefficient on every block past the first.
    static CTypeOperator from_blocks(const std::vector<BlockSpec>& specs);

    std::size_t block_count() const { return blocks_.size(); }
    const Block& block(std::uint64_t n) const;
    // One past the last materialized index, b_{block_count}.
    std::uint64_t dimension() const;
    std::uint64_t block_of_index(std::uint64_t index) const;

    // Exact image T x. Every support index must be materialized.
    SparseVector apply(const SparseVector& x) const;
    // T^steps x by repeated exact application. Asserts after every step that
    // the support stays inside the phi-closure of the initially touched
    // blocks (the downward-only mass flow this type guarantees).
    SparseVector iterate(const SparseVector& x, std::uint64_t steps) const;
    // Restriction to block n.
    SparseVector project(const SparseVector& x, std::uint64_t n) const;

    // l1 norm of P_l T^j P_l x in closed form, O(support of P_l x): after j
    // steps of the compressed cyclic shift an entry at offset i lands on
    // f = (i+j) mod L carrying 2^{min(f,delta)-min(i,delta)}; wraparounds
    // only flip signs. Never iterates.
    Dyadic block_cycle_norm_exact(std::uint64_t l, const SparseVector& x,
                                  std::uint64_t j) const;
    double block_cycle_norm(std::uint64_t l, const SparseVector& x, std::uint64_t j) const;

    // X_l: the block-l entries pushed to the block top by the remaining
    // interior weights, summed in l1.
    Dyadic x_scale_exact(const SparseVector& x, std::uint64_t l) const;
    double x_scale(const SparseVector& x, std::uint64_t l) const;

    struct BadTimeResult {
        std::vector<std::uint64_t> bad_times; // {0 <= j <= J : norm < threshold}
        Dyadic threshold;
        bool j0_found = false;
        std::uint64_t j0 = 0;
        IndexSet windows;     // union of [r L + j0, r L + j0 + 2 delta]
        bool inclusion = false; // bad_times subset of windows
    };
    // Orbit times where the compressed norm drops below the threshold
    // (default X_l / 2), plus the periodic window certificate: a window start
    // j0 < L such that every bad time lies in the width-2delta windows.
    BadTimeResult bad_time_set(std::uint64_t l, const SparseVector& x, std::uint64_t J,
                               std::optional<Dyadic> threshold = std::nullopt) const;

  private:
    explicit CTypeOperator(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}
    std::vector<Block> blocks_;
};

// Materializes every block of the given levels (2^{K} blocks for K+1 levels)
// with v_n = 2^{-tau[k]}, phi(n) = n - 2^{k-1}. Throws construction_error
// naming the first level whose length breaks the doubling condition.
CTypeOperator build_c_plus_1(const CPlusOneLevels& levels);

// Per-level scale data entering the orbit-suppression hypotheses, for the
// l1 setting: C = 1/4, beta(k) = 4 * 2^{delta[k-1] - tau[k]} (stored as
// log2), N(k) = Delta[k] - delta[k]. Entry 0 is a placeholder.
struct AuditScales {
    double C = 0.25;
    std::vector<double> beta_log2;
    std::vector<std::uint64_t> N;
};
AuditScales audit_scales(const CPlusOneLevels& levels);

// Integer-exact inspection of a parameter chain up to level kmax: growth gap
// 2 delta[k-1] - delta[k] <= -8k, its increments increasing, the half rule,
// leak scales non-increasing, square-root summability of the beta terms,
// strictly growing doubled-to-leak gap (the chaoticity proxy), and the
// block-length doubling condition. All comparisons on integers where the
// quantities are integers.
AuditReport validate_chaos_params(const std::vector<std::uint64_t>& delta,
                                  const std::vector<std::uint64_t>& tau,
                                  const std::vector<std::uint64_t>& Delta,
                                  std::uint64_t kmax);

} // namespace udense
