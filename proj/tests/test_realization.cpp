#include <catch2/catch_amalgamated.hpp>

#include "sft/realization.hpp"
#include "sft/base_x.hpp"

using namespace sft;

namespace {

TargetSpec const_target(const mpq_class& h) {
    return TargetSpec{RSeq::make_const(h), h};
}

std::set<std::string> names(const std::vector<LevelColoring>& v) {
    std::set<std::string> out;
    for (const auto& r : v) out.insert(r.str());
    return out;
}

}  // namespace

TEST_CASE("surviving_levels") {
    // const 1/2, L=2, N=4: everything but (1,1)
    auto surv = surviving_levels(2, const_target(mpq_class(1, 2)), 4);
    CHECK(names(surv) == std::set<std::string>{"", "0", "1", "00", "01", "10"});

    // const 1: everything survives
    auto all = surviving_levels(3, const_target(1), 6);
    CHECK(all.size() == 15);  // 2^0 + 2^1 + 2^2 + 2^3

    // const 0: only all-zero colorings
    auto zero = surviving_levels(3, const_target(0), 6);
    CHECK(names(zero) == std::set<std::string>{"", "0", "00", "000"});
}

TEST_CASE("surviving_levels containment") {
    // contains every rho with delta <= h; contained in delta <= r(N) + 2*2^-N
    for (int k : {0, 3, 8, 11, 16}) {
        mpq_class h(k, 16);
        TargetSpec t = const_target(h);
        int N = 6, L = 4;
        auto surv = surviving_levels(L, t, N);
        std::set<std::string> got = names(surv);
        for (uint64_t len = 0; len <= static_cast<uint64_t>(L); ++len) {
            for (uint64_t mask = 0; mask < (1ull << len); ++mask) {
                std::vector<uint8_t> bits(static_cast<size_t>(len));
                for (uint64_t i = 0; i < len; ++i) bits[static_cast<size_t>(i)] = (mask >> i) & 1;
                LevelColoring rho(bits);
                mpq_class d = delta_exact(rho);
                if (d <= h) CHECK(got.count(rho.str()) == 1);
                if (got.count(rho.str())) CHECK(d <= h + 2 * pow2_q(-N));
            }
        }
    }
}

TEST_CASE("monotone pruning") {
    TargetSpec t = const_target(mpq_class(3, 8));
    for (int N = 1; N <= 7; ++N) {
        auto a = names(surviving_levels(4, t, N + 1));
        auto b = names(surviving_levels(4, t, N));
        for (const auto& s : a) CHECK(b.count(s) == 1);
    }
}

TEST_CASE("entropy_bracket") {
    // h = 1/2, n = 8, L = 3, N = 6: lower 1/2 from (1,0,0), upper 1/2 + 2^-7
    TargetSpec t = const_target(mpq_class(1, 2));
    EntropyBracket br = entropy_bracket(t, 8, 3, 6);
    CHECK(br.lower == mpq_class(1, 2));
    CHECK(br.upper == mpq_class(1, 2) + pow2_q(-7));
    CHECK(delta_exact(br.witness) <= mpq_class(1, 2));

    // h = 0: bracket [0, 2^{-n+1}]
    EntropyBracket b0 = entropy_bracket(const_target(0), 8, 3, 6);
    CHECK(b0.lower == 0);
    CHECK(b0.upper == pow2_q(-7));

    // h = 1 at n = 2^L: lower (n-1)/n
    EntropyBracket b1 = entropy_bracket(const_target(1), 8, 3, 6);
    CHECK(b1.lower == mpq_class(7, 8));
    CHECK(b1.upper == 1 + pow2_q(-7));

    // without a claimed limit the upper bound uses r(N) + slack
    TargetSpec anon{RSeq::make_const(mpq_class(1, 2)), std::nullopt};
    EntropyBracket ba = entropy_bracket(anon, 8, 3, 6);
    CHECK(ba.upper == mpq_class(1, 2) + pow2_q(-7) + pow2_q(-5));
}

TEST_CASE("sandwich and shrinking width") {
    // dyadic h with r = h: lower <= h <= upper at n = 2^L, width -> 0
    for (auto [p, q] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {3, 8}, {1, 1}}) {
        mpq_class h(p, q);
        TargetSpec t = const_target(h);
        mpq_class prev_width = 2;
        for (int L = 3; L <= 6; ++L) {
            int n = 1 << L;
            EntropyBracket br = entropy_bracket(t, n, L, 8);
            CHECK(br.lower <= h);
            CHECK(h <= br.upper);
            mpq_class width = br.upper - br.lower;
            CHECK(width < prev_width);
            prev_width = width;
        }
    }
}

TEST_CASE("zero-entropy accounting: the free layer is exactly the 1-cells") {
    // log2(#superimpositions over one pattern on F_n) = freq * n^2: the
    // number of 1-marked cells of the built window is freq * n * n
    for (const char* bits : {"1", "10", "011", "1101"}) {
        LevelColoring rho = LevelColoring::parse(bits);
        for (int n : {4, 8, 16}) {
            XPattern p = build_x_pattern(rho, n);
            long ones = 0;
            for (int y = 1; y <= n; ++y)
                for (int x = 1; x <= n; ++x) ones += p.bit_at(x, y);
            CHECK(mpq_class(ones) == column_frequency(rho, n) * n * n);
        }
    }
}

TEST_CASE("density_realization_report") {
    TargetSpec t = const_target(mpq_class(1, 2));
    auto rows = density_realization_report(t, {4, 8, 16, 32}, 5, 8);
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        REQUIRE(row.gap.has_value());
        CHECK(*row.gap >= 0);
        // gaps shrink like (L+2)/n
        CHECK(*row.gap <= mpq_class(7, row.n));
    }

    // const 0: all frequencies 0
    auto zero = density_realization_report(const_target(0), {4, 8}, 4, 8);
    for (const auto& row : zero) CHECK(row.max_frequency == 0);

    // a strictly decreasing list targeting 1/2 eventually excludes delta > 1/2
    TargetSpec lst{RSeq::parse("list:3/4,5/8,9/16,17/32,33/64,65/128,129/256,257/512"), std::nullopt};
    auto surv = surviving_levels(3, lst, 8);
    for (const auto& rho : surv) CHECK(delta_exact(rho) <= mpq_class(1, 2) + pow2_q(-8));
}
