// Acceptance suite: one check per release criterion, one PASS/FAIL line
// each, nonzero exit if anything fails. Tolerances are pinned in code.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <vector>

#include "sft/base_x.hpp"
#include "sft/core.hpp"
#include "sft/counting.hpp"
#include "sft/geometry.hpp"
#include "sft/irreducible.hpp"
#include "sft/machine.hpp"
#include "sft/realization.hpp"
#include "sft/substitution.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace sft;

namespace {

int failures = 0;

void criterion(int index, const std::string& name, double time_limit_s, const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string err;
    try {
        ok = body();
    } catch (const std::exception& e) {
        err = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs <= time_limit_s;
    if (!ok || !in_time) ++failures;
    std::printf("criterion %2d: %s (%.2fs%s) %s%s\n", index, ok && in_time ? "PASS" : "FAIL", secs,
                in_time ? "" : " OVER TIME", name.c_str(), err.empty() ? "" : (": " + err).c_str());
    std::fflush(stdout);
}

bool check(bool cond, const char* what) {
    if (!cond) std::printf("    failed: %s\n", what);
    return cond;
}

mpq_class qabs(const mpq_class& q) { return q < 0 ? mpq_class(-q) : q; }

std::vector<std::vector<int>> hard_strip_graph(int width) {
    Syntax hard = fixtures::hard_squares();
    Shape cube = unit_cube(2);
    size_t i00 = cube.index_of({0, 0}), i10 = cube.index_of({1, 0});
    size_t i01 = cube.index_of({0, 1}), i11 = cube.index_of({1, 1});
    int n_states = 1 << width;
    std::vector<std::vector<int>> adj(static_cast<size_t>(n_states));
    std::vector<int> syms(4);
    for (int r = 0; r < n_states; ++r) {
        for (int q = 0; q < n_states; ++q) {
            bool ok = true;
            for (int i = 0; i + 1 < width && ok; ++i) {
                syms[i00] = (r >> i) & 1;
                syms[i10] = (r >> (i + 1)) & 1;
                syms[i01] = (q >> i) & 1;
                syms[i11] = (q >> (i + 1)) & 1;
                if (!hard.code_allowed(hard.code_of(syms))) ok = false;
            }
            if (ok) adj[static_cast<size_t>(r)].push_back(q);
        }
    }
    return adj;
}

}  // namespace

int main() {
    // 1. full shift sanity: every upper term is exactly k for 2^k symbols
    criterion(1, "full shift upper terms are exact", 1.0, [] {
        for (int k = 1; k <= 3; ++k) {
            for (int d = 1; d <= 2; ++d) {
                Syntax s = fixtures::full_shift_k(1 << k, d);
                EntropyBoundSeq seq = upper_entropy_terms(s, 6);
                if (!check(seq.terms.size() == 6, "six terms")) return false;
                for (const auto& [n, u] : seq.terms) {
                    if (!check(u.finite && u.iv.lo == k && u.iv.hi == k, "term == k exactly")) return false;
                }
            }
        }
        return true;
    });

    // 2. golden mean: certified spectral interval and decreasing upper terms
    criterion(2, "1D golden mean spectral value and upper terms", 1.0, [] {
        Syntax golden = fixtures::golden_mean();
        LogValue h = spectral_entropy_1d(golden, mpq_class(1, 1000000000));
        RatInterval truth = oracle::golden_entropy();
        if (!check(h.finite, "finite")) return false;
        if (!check(h.iv.width() <= mpq_class(1, 1000000000), "width <= 1e-9")) return false;
        if (!check(h.iv.lo <= truth.lo && truth.hi <= h.iv.hi, "contains log2 golden ratio")) return false;

        EntropyBoundSeq seq = upper_entropy_terms(golden, 24);
        if (!check(seq.terms.size() == 24, "24 terms")) return false;
        RatInterval prev;
        for (int n = 1; n <= 24; ++n) {
            const auto& u = seq.terms[static_cast<size_t>(n - 1)].second;
            RatInterval fib = log2_interval(oracle::fib(n + 2));
            if (!check(u.iv.lo <= fib.hi / n && u.iv.hi >= fib.lo / n, "term is (1/n) log2 F_{n+2}")) return false;
            if (!check(u.iv.lo > truth.hi, "term exceeds the entropy")) return false;
            if (n > 1 && !check(u.iv.hi < prev.lo, "terms strictly decrease")) return false;
            prev = u.iv;
        }
        return true;
    });

    // 3. 2D hard squares: exact counts and decreasing upper terms over 0.587
    criterion(3, "hard squares counts and upper terms", 30.0, [] {
        Syntax hard = fixtures::hard_squares();
        if (!check(count_rect(hard, 2, 2).count == 7, "2x2 = 7")) return false;
        if (!check(count_rect(hard, 3, 3).count == 63, "3x3 = 63")) return false;
        if (!check(count_rect(hard, 4, 4).count == 1234, "4x4 = 1234")) return false;
        for (int n = 1; n <= 4; ++n)
            for (int m = 1; n * m <= 16; ++m)
                if (!check(count_rect(hard, n, m).count == oracle::naive_count(hard, box_shape({1, 1}, {n, m})),
                           "count_rect matches brute force"))
                    return false;

        LogValue strip = spectral_log2_radius(hard_strip_graph(10), mpq_class(1, 1 << 20));
        mpq_class floor_val(587, 1000);
        if (!check(strip.finite && strip.iv.lo / 10 >= floor_val, "strip oracle >= 0.587")) return false;

        EntropyBoundSeq seq = upper_entropy_terms(hard, 10);
        if (!check(seq.terms.size() == 10, "10 terms")) return false;
        RatInterval prev;
        for (int n = 1; n <= 10; ++n) {
            const auto& u = seq.terms[static_cast<size_t>(n - 1)].second;
            if (!check(u.finite && u.iv.lo >= floor_val, "term >= 0.587")) return false;
            if (n > 4 && !check(u.iv.hi < prev.lo, "strictly decreasing from n = 4")) return false;
            if (n >= 4) prev = u.iv;
        }
        return true;
    });

    // 4. one-sidedness and restriction consistency on random syntaxes
    criterion(4, "random one-step syntaxes: one-sidedness properties", 60.0, [] {
        std::mt19937 rng(2024);
        for (int trial = 0; trial < 100; ++trial) {
            Syntax s = fixtures::random_one_step_2d(rng);

            // lower evidence: a subalphabet whose colorings are never
            // constrained embeds a full shift, so its log-size bounds h from
            // below; upper terms may never fall under it
            mpq_class evidence = 0;
            Shape cube = unit_cube(2);
            for (int keep = 0; keep < 2; ++keep) {
                std::vector<int> syms(4, keep);
                if (s.code_allowed(s.code_of(syms))) evidence = std::max(evidence, mpq_class(0));
            }
            {
                bool all_free = true;
                std::vector<int> syms(4);
                for (int m = 0; m < 16 && all_free; ++m) {
                    syms[cube.index_of({0, 0})] = m & 1;
                    syms[cube.index_of({1, 0})] = (m >> 1) & 1;
                    syms[cube.index_of({0, 1})] = (m >> 2) & 1;
                    syms[cube.index_of({1, 1})] = (m >> 3) & 1;
                    if (!s.code_allowed(s.code_of(syms))) all_free = false;
                }
                if (all_free) evidence = 1;
            }
            EntropyBoundSeq seq = upper_entropy_terms(s, 4);
            for (const auto& [n, u] : seq.terms) {
                if (!u.finite) continue;
                if (!check(u.iv.hi >= evidence, "upper term >= lower evidence")) return false;
            }

            // downward closure of enumerated patterns
            auto small = enumerate_locally_admissible(s, rect_region(2, 2));
            std::set<std::vector<int>> small_set;
            for (const auto& p : small) small_set.insert(p.symbols);
            for (const auto& p : enumerate_locally_admissible(s, rect_region(3, 3))) {
                Pattern r = p.restricted(rect_region(2, 2));
                if (!check(small_set.count(r.symbols) == 1, "restriction is enumerated")) return false;
            }
        }
        return true;
    });

    // 5. irreducible squeeze on the full shift and hard squares
    criterion(5, "two-sided squeeze at precision 2", 60.0, [] {
        Syntax full2 = fixtures::full_shift_k(2, 2);
        GlobalAdmissibility of(full2);
        SqueezeResult sf = entropy_to_precision(of, 2);
        if (!check(sf.success && sf.width < mpq_class(1, 2), "full shift width < 1/2")) return false;
        mpq_class mid_f = (sf.lower + sf.upper) / 2;
        if (!check(qabs(mid_f - 1) <= mpq_class(1, 4), "full shift midpoint within 0.25 of 1")) return false;
        if (!check(sf.lower <= sf.upper, "s <= u")) return false;

        Syntax hard = fixtures::hard_squares();
        GlobalAdmissibility oh(hard);
        SqueezeResult sh = entropy_to_precision(oh, 2);
        if (!check(sh.success && sh.width < mpq_class(1, 2), "hard squares width < 1/2")) return false;
        LogValue strip = spectral_log2_radius(hard_strip_graph(10), mpq_class(1, 1 << 20));
        mpq_class ref = (strip.iv.lo + strip.iv.hi) / 20;  // per-site reference ~0.5878
        mpq_class mid = (sh.lower + sh.upper) / 2;
        if (!check(qabs(mid - ref) <= mpq_class(1, 4), "hard squares midpoint within 0.25 of the strip value"))
            return false;
        return check(sh.lower <= sh.upper, "s <= u");
    });

    // 6. the expansion's marked set is exactly the standard net
    criterion(6, "2-net expansion equals the level formula", 1.0, [] {
        SubstitutionRule net = two_net_rule();
        int star = net.alphabet->id("*");
        for (int n = 1; n <= 6; ++n) {
            SBlock b = expand(net, star, n);
            for (long y = 1; y <= b.side; ++y)
                for (long x = 1; x <= b.side; ++x)
                    if (!check((b.at(x, y) == star) == (*net_level(x) == *net_level(y)), "net formula"))
                        return false;
        }
        return true;
    });

    // 7. board combinatorics
    criterion(7, "index sets, boards, residue positions", 5.0, [] {
        for (int n = 1; n <= 6; ++n) {
            auto s = i_set(n);
            if (!check(s.size() == static_cast<size_t>(std::pow(4, n)), "|I_n| = 4^n")) return false;
            if (!check(s.back() == static_cast<long>(std::pow(5, n)), "max = 5^n")) return false;
        }
        for (int n = 1; n <= 3; ++n) {
            BoardSpec b = board(n);
            if (!check(mpz_class(static_cast<unsigned long>(b.cells().size())) == b.cell_count(),
                       "|B_n| = 2*4^n*5^n - 16^n"))
                return false;
        }
        for (int N = 1; N <= 4; ++N) {
            ResiduePositions rp = residue_positions(N);
            std::set<long> seen(rp.residues.begin(), rp.residues.end());
            if (!check(seen.size() == (1u << N) && *seen.begin() == 0 && *seen.rbegin() == (1 << N) - 1,
                       "complete residue system"))
                return false;
        }
        return true;
    });

    // 8. pruning identity and halting dichotomy
    criterion(8, "pruning identity and dichotomy", 30.0, [] {
        for (int L = 0; L <= 8; ++L) {
            for (uint64_t mask = 0; mask < (1ull << L); ++mask) {
                std::vector<uint8_t> bits(static_cast<size_t>(L));
                for (int i = 0; i < L; ++i) bits[static_cast<size_t>(i)] = (mask >> i) & 1;
                LevelColoring rho(bits);
                mpq_class d = delta_exact(rho);

                // identity through N <= 6 (exact rho' identity asserted
                // internally on every iteration)
                PruneOutcome o = prune_run(rho, RSeq::make_const(mpq_class(2)), 6);
                for (const auto& st : o.trace) {
                    mpq_class err = st.delta > d ? st.delta - d : d - st.delta;
                    mpq_class cap = pow2_q(-st.N) + (L > 0 ? pow2_q(-L) : mpq_class(0));
                    if (!check(err <= cap, "delta_N within 2^-N + 2^-L of delta")) return false;
                }

                // dichotomy for r = h in {k/16}
                for (int k = 0; k <= 16; ++k) {
                    mpq_class h(k, 16);
                    PruneOutcome p = prune_run(rho, RSeq::make_const(h), L + 4);
                    if (!check(p.halted == (d > h), "halts iff delta > h")) return false;
                }
            }
        }
        return true;
    });

    // 9. board representation matches bounded simulation
    criterion(9, "board feasibility equivalence and local verification", 60.0, [] {
        std::mt19937 rng(99);
        std::uniform_int_distribution<int> coin(0, 1);
        auto corpus = fixtures::machine_corpus();
        if (!check(corpus.size() >= 5, "at least 5 machines")) return false;
        for (const auto& m : corpus) {
            for (int level : {1, 2}) {
                BoardSpec b = board(level);
                long R = static_cast<long>(b.node_axis.size());
                bool verified_one = false;
                for (int trial = 0; trial < 6; ++trial) {
                    std::vector<uint8_t> bits(static_cast<size_t>(R));
                    for (auto& v : bits) v = trial == 0 ? 0 : static_cast<uint8_t>(coin(rng));
                    SuperimposeResult s = board_superimpose(m, b, bits);
                    RunResult r = run_bounded(m, bits_input(m, bits), R - 1);
                    if (!check(s.feasible == !r.halted, "feasible iff the run survives 4^n steps")) return false;
                    if (!s.feasible) continue;
                    verified_one = true;
                    if (!check(verify_superimposed(s.run, m, b), "verification accepts the construction"))
                        return false;

                    std::vector<Coord> cells;
                    for (const auto& [c, an] : s.run.annotations) cells.push_back(c);
                    std::uniform_int_distribution<size_t> pick(0, cells.size() - 1);
                    for (int c = 0; c < 100; ++c) {
                        BoardRun bad = s.run;
                        BoardAnnot& an = bad.annotations[cells[pick(rng)]];
                        switch (an.kind) {
                            case BoardCellKind::Node:
                                if (coin(rng))
                                    an.node.data ^= 1;
                                else
                                    an.node.state = an.node.has_state() ? -1 : 0;
                                break;
                            case BoardCellKind::HapPair:
                                if (coin(rng))
                                    an.left.data ^= 1;
                                else
                                    an.right.data ^= 1;
                                break;
                            case BoardCellKind::VertTriple:
                                an.v.data ^= 1;
                                break;
                        }
                        if (!check(!verify_superimposed(bad, m, b), "corruption rejected")) return false;
                    }
                }
                (void)verified_one;
            }
        }
        return true;
    });

    // 10. realization brackets around dyadic targets
    criterion(10, "entropy brackets around the target", 120.0, [] {
        const int L = 5, N = 8;
        for (auto [p, q] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {3, 4}, {1, 1}}) {
            mpq_class h(p, q);
            TargetSpec t{RSeq::make_const(h), h};
            for (int n : {4, 8, 16, 32}) {
                EntropyBracket br = entropy_bracket(t, n, L, N);
                if (!check(br.lower <= h, "lower <= h")) return false;
                if (!check(h <= br.upper, "h <= upper")) return false;
                mpq_class cap = pow2_q(-n + 1) + mpq_class(L + 2, n);
                if (!check(br.upper - br.lower <= cap, "width within 2^{-n+1} + (L+2)/n")) return false;
            }
        }
        return true;
    });

    // 11. zero-entropy bound for the 2-net rule
    criterion(11, "substitution count bound", 1.0, [] {
        SubstitutionRule net = two_net_rule();
        if (!check(zero_entropy_bound(net, 8, 1) == mpq_class(17, 16), "formula exact at m=1, n=8")) return false;
        mpq_class v = zero_entropy_bound(net, 1 << 10, 3);
        return check(v < mpq_class(2, 100) + mpq_class(1, 8), "m=3 bound under 0.02 + 1/8 at n = 2^10");
    });

    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
