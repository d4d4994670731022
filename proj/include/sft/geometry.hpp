#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sft/core.hpp"
#include "sft/rational.hpp"

namespace sft {

// Union over n of grids I_n x J_n with I_n = 2^n Z + t_n, J_n = 2^n Z + u_n.
// The standard net has t_n = u_n = 2^(n-1), so the level of c != 0 is the
// 2-adic valuation of c plus one.
struct TwoNetSpec {
    bool standard = true;
    std::vector<std::pair<long, long>> offsets;  // (t_n, u_n) for levels 1..L

    static TwoNetSpec standard_net() { return TwoNetSpec{}; }

    static TwoNetSpec explicit_net(std::vector<std::pair<long, long>> offs) {
        TwoNetSpec net;
        net.standard = false;
        net.offsets = std::move(offs);
        // disjointness of the I_n's (and J_n's) on a finite window
        long window = 1L << (net.offsets.size() + 2);
        for (long c = -window; c <= window; ++c) {
            int hits_i = 0, hits_j = 0;
            for (size_t n = 1; n <= net.offsets.size(); ++n) {
                long mod = 1L << n;
                if (((c - net.offsets[n - 1].first) % mod + mod) % mod == 0) ++hits_i;
                if (((c - net.offsets[n - 1].second) % mod + mod) % mod == 0) ++hits_j;
            }
            if (hits_i > 1 || hits_j > 1) throw input_error("two-net: levels not pairwise disjoint");
        }
        return net;
    }
};

inline int valuation2(long c) {
    int v = 0;
    while ((c & 1) == 0) {
        c >>= 1;
        ++v;
    }
    return v;
}

inline int valuation2(const mpz_class& c) {
    return static_cast<int>(mpz_scan1(c.get_mpz_t(), 0));
}

// [OP] net_level: the unique level whose column grid contains c, if any.
inline std::optional<int> net_level(long c, const TwoNetSpec& net = TwoNetSpec::standard_net()) {
    if (net.standard) {
        if (c == 0) throw input_error("net_level: c = 0 matches every level of the standard net");
        return valuation2(std::abs(c)) + 1;
    }
    for (size_t n = 1; n <= net.offsets.size(); ++n) {
        long mod = 1L << n;
        if (((c - net.offsets[n - 1].first) % mod + mod) % mod == 0) return static_cast<int>(n);
    }
    return std::nullopt;
}

inline int standard_level(const mpz_class& c) {
    if (c == 0) throw input_error("standard_level: c = 0");
    return valuation2(c) + 1;
}

// [OP] i_set: I_1 = {1,2,4,5}, I_{n+1} = I_n u (I_n+5^n) u (I_n+3*5^n) u (I_n+4*5^n).
inline std::vector<long> i_set(int n, uint64_t budget = 1ull << 24) {
    if (n < 1) throw input_error("i_set: n >= 1 required");
    double sz = std::pow(4.0, n);
    if (sz > static_cast<double>(budget)) throw budget_error("i_set: 4^n exceeds budget");
    std::vector<long> cur{1, 2, 4, 5};
    long p5 = 5;
    for (int k = 1; k < n; ++k) {
        std::vector<long> nxt;
        nxt.reserve(cur.size() * 4);
        for (long shift : {0L, 1L, 3L, 4L})
            for (long v : cur) nxt.push_back(v + shift * p5);
        std::sort(nxt.begin(), nxt.end());
        cur.swap(nxt);
        p5 *= 5;
    }
    return cur;
}

// Membership in I = union of the I_n: v - 1 has all base-5 digits in {0,1,3,4}.
inline bool i_contains(const mpz_class& v) {
    if (v < 1) return false;
    mpz_class x = v - 1;
    while (x > 0) {
        long digit = mpz_class(x % 5).get_si();
        if (digit == 2) return false;
        x /= 5;
    }
    return true;
}

// [OP] i_enum: the k-th smallest element of I (digit bijection with base 4).
inline mpz_class i_enum(const mpz_class& k) {
    if (k < 1) throw input_error("i_enum: k >= 1 required");
    static const long digit_map[4] = {0, 1, 3, 4};
    mpz_class x = k - 1, value = 0, p5 = 1;
    while (x > 0) {
        long d = mpz_class(x % 4).get_si();
        value += digit_map[d] * p5;
        x /= 4;
        p5 *= 5;
    }
    return value + 1;
}

// Index of v within the sorted enumeration of I (inverse of i_enum).
inline std::optional<mpz_class> i_index_of(const mpz_class& v) {
    if (!i_contains(v)) return std::nullopt;
    mpz_class x = v - 1, index = 0, p4 = 1;
    while (x > 0) {
        long d = mpz_class(x % 5).get_si();
        long inv = d == 0 ? 0 : d == 1 ? 1 : d == 3 ? 2 : 3;
        index += inv * p4;
        x /= 5;
        p4 *= 4;
    }
    return index + 1;
}

// Direction sets for board cells; bit i set means a lattice neighbor inside
// the board in that direction.
enum Dir : int { DirLeft = 1, DirRight = 2, DirDown = 4, DirUp = 8 };

inline std::string dir_symbol_name(int mask) {
    switch (mask) {
        case DirLeft | DirRight: return "h";
        case DirUp | DirDown: return "v";
        case DirRight | DirUp: return "ll";
        case DirLeft | DirUp: return "lr";
        case DirRight | DirDown: return "ul";
        case DirLeft | DirDown: return "ur";
        case DirLeft | DirRight | DirDown: return "tee-s";
        case DirLeft | DirRight | DirUp: return "tee-n";
        case DirUp | DirDown | DirRight: return "tee-e";
        case DirUp | DirDown | DirLeft: return "tee-w";
        case DirLeft | DirRight | DirUp | DirDown: return "cross";
        default: throw input_error("dir_symbol_name: not a board direction set");
    }
}

inline std::string dir_symbol_glyph(int mask) {
    switch (mask) {
        case DirLeft | DirRight: return "─";               // ─
        case DirUp | DirDown: return "│";                  // │
        case DirRight | DirUp: return "└";                 // └
        case DirLeft | DirUp: return "┘";                  // ┘
        case DirRight | DirDown: return "┌";               // ┌
        case DirLeft | DirDown: return "┐";                // ┐
        case DirLeft | DirRight | DirDown: return "┬";     // ┬
        case DirLeft | DirRight | DirUp: return "┴";       // ┴
        case DirUp | DirDown | DirRight: return "├";       // ├
        case DirUp | DirDown | DirLeft: return "┤";        // ┤
        case DirLeft | DirRight | DirUp | DirDown: return "┼";  // ┼
        default: return " ";
    }
}

// [TYPE] BoardSpec: the n-board B_n = (I_n x {1..5^n}) u ({1..5^n} x I_n),
// nodes I_n x I_n, with per-cell direction symbols.
struct BoardSpec {
    int level = 0;
    long side = 0;                 // 5^n
    std::vector<long> node_axis;   // I_n, sorted
    std::vector<uint8_t> on_axis;  // indexed 1..side: 1 iff coordinate in I_n

    bool axis_hit(long c) const { return c >= 1 && c <= side && on_axis[static_cast<size_t>(c)] != 0; }
    bool in_board(long x, long y) const {
        return x >= 1 && x <= side && y >= 1 && y <= side && (axis_hit(x) || axis_hit(y));
    }
    bool is_node(long x, long y) const { return axis_hit(x) && axis_hit(y); }

    int direction_mask(long x, long y) const {
        if (!in_board(x, y)) throw input_error("direction_mask: cell not in board");
        int m = 0;
        if (in_board(x - 1, y)) m |= DirLeft;
        if (in_board(x + 1, y)) m |= DirRight;
        if (in_board(x, y - 1)) m |= DirDown;
        if (in_board(x, y + 1)) m |= DirUp;
        return m;
    }

    mpz_class cell_count() const {
        // |B_n| = 2*4^n*5^n - 16^n
        unsigned long n = static_cast<unsigned long>(level);
        return 2 * pow_mpz(4, n) * pow_mpz(5, n) - pow_mpz(16, n);
    }

    std::vector<Coord> cells(uint64_t budget = 1ull << 26) const {
        if (static_cast<double>(side) * static_cast<double>(side) > static_cast<double>(budget))
            throw budget_error("board cells: render budget exceeded");
        std::vector<Coord> out;
        for (long y = 1; y <= side; ++y)
            for (long x = 1; x <= side; ++x)
                if (in_board(x, y)) out.push_back({static_cast<int>(x), static_cast<int>(y)});
        return out;
    }
};

// [OP] board
inline BoardSpec board(int n, uint64_t budget = 1ull << 26) {
    if (n < 1) throw input_error("board: n >= 1 required");
    BoardSpec b;
    b.level = n;
    double sd = std::pow(5.0, n);
    if (sd * sd > static_cast<double>(budget)) throw budget_error("board: 25^n exceeds render budget");
    b.side = 1;
    for (int i = 0; i < n; ++i) b.side *= 5;
    b.node_axis = i_set(n);
    b.on_axis.assign(static_cast<size_t>(b.side) + 1, 0);
    for (long v : b.node_axis) b.on_axis[static_cast<size_t>(v)] = 1;
    return b;
}

// [OP] board_density: |B_n| / 25^n.
inline mpq_class board_density(int n) {
    if (n < 1) throw input_error("board_density: n >= 1 required");
    BoardSpec b;
    b.level = n;
    mpq_class d(b.cell_count(), pow_mpz(25, static_cast<unsigned long>(n)));
    d.canonicalize();
    return d;
}

// [OP] residue_positions: partial geometric sums 1 + 5^q + ... + 5^{tq},
// t = 1..2^N, with q the least positive integer satisfying 5^q = 1 mod 2^N.
// Their residues mod 2^N are exactly {0, ..., 2^N - 1}.
struct ResiduePositions {
    int N = 0;
    long q = 0;
    std::vector<mpz_class> positions;
    std::vector<mpz_class> indices;  // position's index in the enumeration of I
    std::vector<long> residues;      // positions mod 2^N
};

inline long least_order_5_mod_2n(int N) {
    long mod = 1L << N;
    long v = 5 % mod;
    long q = 1;
    while (v != 1 % mod) {
        v = static_cast<long>((static_cast<unsigned long long>(v) * 5) % static_cast<unsigned long long>(mod));
        ++q;
    }
    return q;
}

inline ResiduePositions residue_positions(int N, uint64_t budget = 1ull << 18) {
    if (N < 1) throw input_error("residue_positions: N >= 1 required");
    if (N > 62) throw budget_error("residue_positions: N too large");
    ResiduePositions out;
    out.N = N;
    out.q = least_order_5_mod_2n(N);
    unsigned long count = 1ul << N;
    // max position ~ 5^(q*2^N); cap the exponent
    if (static_cast<double>(out.q) * static_cast<double>(count) > static_cast<double>(budget))
        throw budget_error("residue_positions: positions grow beyond budget");
    mpz_class step = pow_mpz(5, static_cast<unsigned long>(out.q));
    mpz_class power = step;
    mpz_class pos = 1;
    long mod = 1L << N;
    for (unsigned long t = 1; t <= count; ++t) {
        pos += power;
        power *= step;
        out.positions.push_back(pos);
        auto idx = i_index_of(pos);
        if (!idx) throw std::logic_error("residue_positions: position not in I");
        out.indices.push_back(*idx);
        out.residues.push_back(mpz_class(pos % mod).get_si());
    }
    return out;
}

}  // namespace sft
