#pragma once

#include <optional>
#include <vector>

#include "sft/base_x.hpp"
#include "sft/machine.hpp"

namespace sft {

// A right-r.e. target given by its defining sequence r(N) >= h -> h. The
// claimed limit, when supplied, is trusted input (convergence of a
// user-supplied sequence is not checkable).
struct TargetSpec {
    RSeq r;
    std::optional<mpq_class> h_claimed;
};

// [OP] surviving_levels: all level colorings of length <= L that survive
// the pruning loop through N iterations. Contains every rho with
// delta(rho) <= h and is contained in {rho : delta(rho) <= r(N) + 2^-N+1}.
inline std::vector<LevelColoring> surviving_levels(int L, const TargetSpec& t, int N) {
    if (L < 0) throw input_error("surviving_levels: L >= 0 required");
    std::vector<LevelColoring> out;
    for (int len = 0; len <= L; ++len) {
        for (uint64_t mask = 0; mask < (1ull << len); ++mask) {
            std::vector<uint8_t> bits(static_cast<size_t>(len));
            for (int i = 0; i < len; ++i) bits[static_cast<size_t>(i)] = (mask >> i) & 1;
            LevelColoring rho(std::move(bits));
            if (!prune_run(rho, t.r, N).halted) out.push_back(std::move(rho));
        }
    }
    return out;
}

struct EntropyBracket {
    int n = 0;
    mpq_class lower;          // witness-certified: max surviving column frequency
    mpq_class upper;          // asymptotic: h + 2^{-n+1} (cited constant), or
                              // r(N) + 2^{-n+1} + 2^{-N+1} without a claimed limit
    LevelColoring witness;    // a surviving coloring attaining the lower bound
    bool upper_is_asymptotic = true;
};

// [OP] entropy_bracket. The lower bound counts the free binary layer over
// the 1-marked columns of one surviving configuration: log2 of the number of
// its superimpositions on F_n is exactly column_frequency * n^2.
inline EntropyBracket entropy_bracket(const TargetSpec& t, int n, int L, int N) {
    if (n < 1) throw input_error("entropy_bracket: n >= 1 required");
    std::vector<LevelColoring> survivors = surviving_levels(L, t, N);
    if (survivors.empty()) throw std::logic_error("entropy_bracket: no survivors (the empty coloring always survives)");

    EntropyBracket out;
    out.n = n;
    bool first = true;
    for (const auto& rho : survivors) {
        mpq_class f = column_frequency(rho, n);
        if (first || f > out.lower) {
            out.lower = f;
            out.witness = rho;
            first = false;
        }
    }
    if (t.h_claimed) {
        out.upper = *t.h_claimed + pow2_q(-n + 1);
    } else {
        out.upper = t.r.at(N) + pow2_q(-n + 1) + pow2_q(-N + 1);
    }
    out.upper.canonicalize();
    out.lower.canonicalize();
    return out;
}

struct DensityRow {
    int n = 0;
    mpq_class max_frequency;
    std::optional<mpq_class> gap;  // h_claimed - max_frequency, when a limit is claimed
    LevelColoring witness;
};

// [OP] density_realization_report: per n, the best surviving column
// frequency and its gap to the claimed limit.
inline std::vector<DensityRow> density_realization_report(const TargetSpec& t, const std::vector<int>& ns,
                                                          int L, int N) {
    std::vector<LevelColoring> survivors = surviving_levels(L, t, N);
    std::vector<DensityRow> rows;
    for (int n : ns) {
        DensityRow row;
        row.n = n;
        bool first = true;
        for (const auto& rho : survivors) {
            mpq_class f = column_frequency(rho, n);
            if (first || f > row.max_frequency) {
                row.max_frequency = f;
                row.witness = rho;
                first = false;
            }
        }
        if (t.h_claimed) row.gap = *t.h_claimed - row.max_frequency;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace sft
