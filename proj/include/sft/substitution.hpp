#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sft/core.hpp"
#include "sft/rational.hpp"

namespace sft {

// Map from symbols to k x k symbol squares. Images are stored bottom-left
// origin: image(sym)[x-1 + (y-1)*k] is the symbol at (x, y), 1 <= x,y <= k.
struct SubstitutionRule {
    AlphabetPtr alphabet;
    int k = 0;
    std::vector<std::vector<int>> images;  // per symbol id

    SubstitutionRule(AlphabetPtr a, int k_, std::vector<std::vector<int>> imgs)
        : alphabet(std::move(a)), k(k_), images(std::move(imgs)) {
        if (k < 2) throw input_error("substitution rule: k >= 2 required");
        if (static_cast<int>(images.size()) != alphabet->size())
            throw input_error("substitution rule: every symbol needs an image");
        for (const auto& img : images) {
            if (static_cast<int>(img.size()) != k * k) throw input_error("substitution rule: image must be k x k");
            for (int s : img)
                if (s < 0 || s >= alphabet->size()) throw input_error("substitution rule: bad image symbol");
        }
    }

    int image_at(int sym, int x, int y) const {  // 1-based within the block
        return images[static_cast<size_t>(sym)][static_cast<size_t>(x - 1 + (y - 1) * k)];
    }
};

// The k^n x k^n pattern obtained by n-fold expansion of a seed symbol,
// stored row-major with (1,1) at the bottom-left.
struct SBlock {
    int level = 0;
    int seed = 0;
    long side = 1;  // k^level
    std::vector<int> cells;

    int at(long x, long y) const { return cells[static_cast<size_t>(x - 1 + (y - 1) * side)]; }
};

// [OP] expand
inline SBlock expand(const SubstitutionRule& rule, int seed, int n, uint64_t budget = 1ull << 26) {
    if (n < 0) throw input_error("expand: n >= 0 required");
    if (seed < 0 || seed >= rule.alphabet->size()) throw input_error("expand: bad seed");
    double cells = std::pow(static_cast<double>(rule.k), 2.0 * n);
    if (cells > static_cast<double>(budget)) throw budget_error("expand: block exceeds budget");

    SBlock b;
    b.level = 0;
    b.seed = seed;
    b.side = 1;
    b.cells = {seed};
    for (int step = 0; step < n; ++step) {
        SBlock nxt;
        nxt.level = b.level + 1;
        nxt.seed = seed;
        nxt.side = b.side * rule.k;
        nxt.cells.assign(static_cast<size_t>(nxt.side) * static_cast<size_t>(nxt.side), 0);
        for (long y = 1; y <= b.side; ++y)
            for (long x = 1; x <= b.side; ++x) {
                int sym = b.at(x, y);
                for (int dy = 1; dy <= rule.k; ++dy)
                    for (int dx = 1; dx <= rule.k; ++dx) {
                        long gx = (x - 1) * rule.k + dx;
                        long gy = (y - 1) * rule.k + dy;
                        nxt.cells[static_cast<size_t>(gx - 1 + (gy - 1) * nxt.side)] = rule.image_at(sym, dx, dy);
                    }
            }
        b = std::move(nxt);
    }
    return b;
}

inline Pattern sblock_pattern(const SubstitutionRule& rule, const SBlock& b) {
    Shape dom = cube_region(2, static_cast<int>(b.side));
    std::vector<int> syms(dom.size());
    for (size_t i = 0; i < dom.size(); ++i) {
        const Coord& c = dom.offsets[i];
        syms[i] = b.at(c[0], c[1]);
    }
    return Pattern(rule.alphabet, dom, syms);
}

// [OP] admissible_in_block: does p appear (up to congruence) in some
// level-search_level block over some seed?
inline bool admissible_in_block(const SubstitutionRule& rule, const Pattern& p, int search_level,
                                uint64_t budget = 1ull << 26) {
    if (!same_alphabet(p.alphabet, rule.alphabet)) throw input_error("admissible_in_block: alphabet mismatch");
    Coord lo = p.domain.min_corner(), hi = p.domain.max_corner();
    long side = 1;
    for (int i = 0; i < search_level; ++i) side *= rule.k;
    long w = hi[0] - lo[0] + 1, h = hi[1] - lo[1] + 1;
    if (w > side || h > side) throw input_error("admissible_in_block: pattern exceeds block size");

    for (int seed = 0; seed < rule.alphabet->size(); ++seed) {
        SBlock b = expand(rule, seed, search_level, budget);
        for (long oy = 1 - lo[1]; oy + hi[1] <= side; ++oy) {
            for (long ox = 1 - lo[0]; ox + hi[0] <= side; ++ox) {
                bool match = true;
                for (size_t i = 0; i < p.domain.size() && match; ++i) {
                    const Coord& c = p.domain.offsets[i];
                    if (b.at(c[0] + ox, c[1] + oy) != p.symbols[i]) match = false;
                }
                if (match) return true;
            }
        }
    }
    return false;
}

// [OP] check_unique_derivation. For each level-`depth` block, examine the
// central square with margin k: count, per alignment phase, the assignments
// of covering preimage cells that reproduce the square under one
// substitution step. A phase admitting two distinct consistent assignments
// is an ambiguity witness; otherwise the rule is unique up to this depth.
struct DerivationCheck {
    bool unique = true;
    std::string witness;  // non-empty on ambiguity
};

inline DerivationCheck check_unique_derivation(const SubstitutionRule& rule, int depth,
                                               uint64_t budget = 1ull << 26) {
    if (depth < 2) throw input_error("check_unique_derivation: depth >= 2 required");
    long side = 1;
    for (int i = 0; i < depth; ++i) side *= rule.k;
    long c_lo = rule.k + 1, c_hi = side - rule.k;  // central square, margin k

    for (int seed = 0; seed < rule.alphabet->size(); ++seed) {
        SBlock b = expand(rule, seed, depth, budget);
        for (int phase_x = 0; phase_x < rule.k; ++phase_x) {
            for (int phase_y = 0; phase_y < rule.k; ++phase_y) {
                // block cells: [phase + k*i + 1, phase + k*i + k] per axis
                long bx_lo = (c_lo - 1 - phase_x) / rule.k;  // block index range (floor)
                long by_lo = (c_lo - 1 - phase_y) / rule.k;
                mpz_class combos = 1;
                bool feasible = true;
                for (long by = by_lo; feasible; ++by) {
                    long y0 = phase_y + by * rule.k + 1;
                    if (y0 > c_hi) break;
                    if (y0 + rule.k - 1 < c_lo) continue;
                    for (long bx = bx_lo; feasible; ++bx) {
                        long x0 = phase_x + bx * rule.k + 1;
                        if (x0 > c_hi) break;
                        if (x0 + rule.k - 1 < c_lo) continue;
                        // overlap of this image block with the central square
                        int matches = 0;
                        for (int sym = 0; sym < rule.alphabet->size(); ++sym) {
                            bool ok = true;
                            for (int dy = 1; dy <= rule.k && ok; ++dy)
                                for (int dx = 1; dx <= rule.k && ok; ++dx) {
                                    long gx = x0 + dx - 1, gy = y0 + dy - 1;
                                    if (gx < c_lo || gx > c_hi || gy < c_lo || gy > c_hi) continue;
                                    if (b.at(gx, gy) != rule.image_at(sym, dx, dy)) ok = false;
                                }
                            if (ok) ++matches;
                        }
                        if (matches == 0) feasible = false;
                        combos *= matches;
                    }
                }
                if (feasible && combos > 1) {
                    DerivationCheck out;
                    out.unique = false;
                    out.witness = "seed " + rule.alphabet->name(seed) + ", phase (" + std::to_string(phase_x) +
                                  "," + std::to_string(phase_y) + "): " + combos.get_str() +
                                  " consistent preimages";
                    return out;
                }
            }
        }
    }
    return DerivationCheck{};
}

// [OP] zero_entropy_bound: evaluates
//   (floor(n/k^m) - 2)^2 * log2|S| / n^2  +  4 * k^m * log2|S| / n
// exactly when |S| is a power of two, with a certified upper rounding of
// log2|S| otherwise (the value stays an upper bound either way).
inline mpq_class zero_entropy_bound(const SubstitutionRule& rule, long n, int m) {
    long km = 1;
    for (int i = 0; i < m; ++i) km *= rule.k;
    if (n <= km) throw input_error("zero_entropy_bound: requires n > k^m");
    mpq_class log_sigma = log2_interval(mpz_class(rule.alphabet->size())).hi;
    long q = n / km - 2;
    if (q < 0) q = 0;
    mpq_class first = mpq_class(q) * q * log_sigma / (mpq_class(n) * n);
    mpq_class second = mpq_class(4) * km * log_sigma / n;
    mpq_class out = first + second;
    out.canonicalize();
    return out;
}

// Built-in rules and the rule file format.
inline SubstitutionRule two_net_rule() {
    auto ab = make_alphabet({".", "*"});  // "." empty, "*" marked
    int dot = 0, star = 1;
    // star -> (. * / * .), dot -> (. . / * .), rows listed top first
    std::vector<int> star_img(4), dot_img(4);
    auto put = [](std::vector<int>& img, int x, int y, int v) { img[static_cast<size_t>(x - 1 + (y - 1) * 2)] = v; };
    put(star_img, 1, 2, dot);
    put(star_img, 2, 2, star);
    put(star_img, 1, 1, star);
    put(star_img, 2, 1, dot);
    put(dot_img, 1, 2, dot);
    put(dot_img, 2, 2, dot);
    put(dot_img, 1, 1, star);
    put(dot_img, 2, 1, dot);
    return SubstitutionRule(ab, 2, {dot_img, star_img});
}

// JSON: {"alphabet":[...], "k":2, "images":{"sym":["top row", ..., "bottom row"]}}
// where each row is a space-separated list of symbol names, top row first.
inline SubstitutionRule rule_from_json(const nlohmann::json& j) {
    AlphabetPtr ab = make_alphabet(j.at("alphabet").get<std::vector<std::string>>());
    int k = j.at("k").get<int>();
    if (k < 2) throw input_error("rule: k >= 2 required");
    std::vector<std::vector<int>> images(static_cast<size_t>(ab->size()),
                                         std::vector<int>(static_cast<size_t>(k) * k, -1));
    const auto& imgs = j.at("images");
    for (int sym = 0; sym < ab->size(); ++sym) {
        const std::string& name = ab->name(sym);
        if (!imgs.contains(name)) throw input_error("rule: missing image for symbol " + name);
        auto rows = imgs.at(name).get<std::vector<std::string>>();
        if (static_cast<int>(rows.size()) != k) throw input_error("rule: image must have k rows");
        for (int r = 0; r < k; ++r) {
            std::istringstream ls(rows[static_cast<size_t>(r)]);
            std::string tok;
            int y = k - r;  // rows listed top first, (1,1) bottom-left internally
            for (int x = 1; x <= k; ++x) {
                if (!(ls >> tok)) throw input_error("rule: image row too short");
                images[static_cast<size_t>(sym)][static_cast<size_t>(x - 1 + (y - 1) * k)] = ab->id(tok);
            }
            if (ls >> tok) throw input_error("rule: image row too long");
        }
    }
    return SubstitutionRule(ab, k, std::move(images));
}

inline SubstitutionRule load_rule(const std::string& name_or_json) {
    if (name_or_json == "2net") return two_net_rule();
    return rule_from_json(nlohmann::json::parse(name_or_json));
}

}  // namespace sft
