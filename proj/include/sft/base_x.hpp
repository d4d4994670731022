#pragma once

#include <string>
#include <vector>

#include "sft/geometry.hpp"
#include "sft/rational.hpp"

namespace sft {

// Finite level coloring rho_1..rho_L; levels beyond L carry bit 0.
struct LevelColoring {
    std::vector<uint8_t> bits;

    LevelColoring() = default;
    explicit LevelColoring(std::vector<uint8_t> b) : bits(std::move(b)) {
        for (uint8_t v : bits)
            if (v > 1) throw input_error("level coloring: bits must be 0/1");
    }

    static LevelColoring parse(const std::string& s) {
        std::vector<uint8_t> b;
        for (char c : s) {
            if (c == '0')
                b.push_back(0);
            else if (c == '1')
                b.push_back(1);
            else
                throw input_error("level coloring: expected a 0/1 string");
        }
        return LevelColoring(std::move(b));
    }

    int length() const { return static_cast<int>(bits.size()); }

    int bit(int level) const {
        if (level < 1) throw input_error("level coloring: level >= 1 required");
        return level <= length() ? bits[static_cast<size_t>(level - 1)] : 0;
    }

    std::string str() const {
        std::string s;
        for (uint8_t b : bits) s += static_cast<char>('0' + b);
        return s;
    }

    bool operator==(const LevelColoring& o) const { return bits == o.bits; }
    bool operator<(const LevelColoring& o) const { return bits < o.bits; }
};

enum class Arrow : uint8_t { Blank = 0, Single = 1, Double = 2 };  // Single carries "0", Double carries "1"

// Finite rectangular window of the base system: a marked-cell layer, a 0/1
// layer constant on columns, and an arrow layer constant on rows.
struct XPattern {
    int n = 0;
    std::vector<uint8_t> bullet;  // (x-1) + (y-1)*n
    std::vector<uint8_t> bit;
    std::vector<Arrow> arrow;

    size_t idx(int x, int y) const { return static_cast<size_t>(x - 1) + static_cast<size_t>(y - 1) * static_cast<size_t>(n); }
    bool is_bullet(int x, int y) const { return bullet[idx(x, y)] != 0; }
    int bit_at(int x, int y) const { return bit[idx(x, y)]; }
    Arrow arrow_at(int x, int y) const { return arrow[idx(x, y)]; }
};

// [OP] build_x_pattern over the standard net.
inline XPattern build_x_pattern(const LevelColoring& rho, int n, uint64_t budget = 1ull << 26) {
    if (n < 1) throw input_error("build_x_pattern: n >= 1 required");
    if (static_cast<double>(n) * n > static_cast<double>(budget)) throw budget_error("build_x_pattern: budget");
    XPattern p;
    p.n = n;
    size_t cells = static_cast<size_t>(n) * static_cast<size_t>(n);
    p.bullet.assign(cells, 0);
    p.bit.assign(cells, 0);
    p.arrow.assign(cells, Arrow::Blank);
    std::vector<int> level(static_cast<size_t>(n) + 1);
    for (int c = 1; c <= n; ++c) level[static_cast<size_t>(c)] = *net_level(c);
    for (int y = 1; y <= n; ++y) {
        Arrow row_arrow = rho.bit(level[static_cast<size_t>(y)]) ? Arrow::Double : Arrow::Single;
        for (int x = 1; x <= n; ++x) {
            p.bullet[p.idx(x, y)] = level[static_cast<size_t>(x)] == level[static_cast<size_t>(y)] ? 1 : 0;
            p.bit[p.idx(x, y)] = static_cast<uint8_t>(rho.bit(level[static_cast<size_t>(x)]));
            p.arrow[p.idx(x, y)] = row_arrow;
        }
    }
    return p;
}

// [OP] check_x_constraints: 0/1 vertical constancy, arrow horizontal
// constancy, and the bullet/arrow/bit coupling at every applicable cell.
inline bool check_x_constraints(const XPattern& p) {
    for (int y = 1; y <= p.n; ++y) {
        for (int x = 1; x <= p.n; ++x) {
            if (y < p.n && p.bit_at(x, y) != p.bit_at(x, y + 1)) return false;
            if (x < p.n) {
                Arrow a = p.arrow_at(x, y), b = p.arrow_at(x + 1, y);
                if (a != Arrow::Blank && b != Arrow::Blank && a != b) return false;
            }
            if (p.is_bullet(x, y)) {
                Arrow want = p.bit_at(x, y) ? Arrow::Double : Arrow::Single;
                if (p.arrow_at(x, y) != want) return false;
            }
        }
    }
    return true;
}

// [OP] delta_exact: sum of rho_n 2^-n.
inline mpq_class delta_exact(const LevelColoring& rho) {
    mpq_class d = 0;
    for (int n = 1; n <= rho.length(); ++n)
        if (rho.bit(n)) d += pow2_q(-n);
    d.canonicalize();
    return d;
}

// [OP] column_frequency: fraction of columns 1..n whose level bit is 1.
inline mpq_class column_frequency(const LevelColoring& rho, int n) {
    if (n < 1) throw input_error("column_frequency: n >= 1 required");
    long ones = 0;
    for (int c = 1; c <= n; ++c)
        if (rho.bit(*net_level(c))) ++ones;
    mpq_class f(ones, n);
    f.canonicalize();
    return f;
}

// Three-line-per-row rendering: net layer (* / .), bit layer (0/1), arrow
// layer (- for the 0-signal, = for the 1-signal, space for blank). Rows are
// printed top (largest axis-2) first.
inline std::string x_pattern_ascii(const XPattern& p) {
    std::string out;
    for (int y = p.n; y >= 1; --y) {
        std::string net = "n| ", bits = "b| ", arr = "a| ";
        for (int x = 1; x <= p.n; ++x) {
            if (x > 1) {
                net += ' ';
                bits += ' ';
                arr += ' ';
            }
            net += p.is_bullet(x, y) ? '*' : '.';
            bits += static_cast<char>('0' + p.bit_at(x, y));
            Arrow a = p.arrow_at(x, y);
            arr += a == Arrow::Blank ? ' ' : (a == Arrow::Single ? '-' : '=');
        }
        out += net + "\n" + bits + "\n" + arr + "\n";
    }
    return out;
}

}  // namespace sft
