#include <doctest.h>

#include <cmath>
#include <sstream>

#include "entfb/sweep.hpp"

using namespace entfb;

TEST_CASE("12-significant-digit formatting") {
    CHECK(format_sig12(0.5) == "0.5");
    CHECK(format_sig12(0.0) == "0");
    CHECK(format_sig12(2.0 / 3.0) == "0.666666666667");
    CHECK(format_sig12(-0.25) == "-0.25");
    // round-trip: 12 digits keep 1e-9 relative accuracy
    const double value = 2.2526528844384757;
    const double parsed = std::stod(format_sig12(value));
    CHECK(std::abs(parsed - value) <= 1e-9 * value);
}

TEST_CASE("header and row layout") {
    CHECK(sweep_csv_header() == "chi,eta,lambda_star,l_fb,l_nofb,epr_variance_nofb,zeta");
    SweepRecord rec{0.25, 0.7, -0.04, 0.79, 0.58, 2.0 / 3.0, 0.29};
    const std::string row = to_csv_row(rec);
    CHECK(row == "0.25,0.7,-0.04,0.79,0.58,0.666666666667,0.29");
}

TEST_CASE("sweep points carry consistent fields") {
    const auto rec = evaluate_sweep_point(0.25, 0.7);
    CHECK(rec.l_fb >= rec.l_nofb);
    CHECK(rec.epr_variance_nofb == doctest::Approx(1.0 / 1.5).epsilon(1e-12));
    CHECK(rec.lambda_star > -0.5);
    CHECK(rec.lambda_star <= 0.0);
    // zeta is evaluated at lambda_star and reproduces l_fb
    CHECK(rec.l_fb == doctest::Approx(-std::log2(2.0 * rec.zeta)).epsilon(1e-12));
}

TEST_CASE("grid construction") {
    const auto recs = run_sweep(0.1, 0.3, 3, {0.0, 0.7});
    REQUIRE(recs.size() == 6);
    // chi-major order
    CHECK(recs[0].chi == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(recs[0].eta == 0.0);
    CHECK(recs[1].chi == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(recs[1].eta == 0.7);
    CHECK(recs[2].chi == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(recs[5].chi == doctest::Approx(0.3).epsilon(1e-15));

    SUBCASE("single-point grid") {
        const auto one = run_sweep(0.49, 0.49, 1, {0.0});
        REQUIRE(one.size() == 1);
        CHECK(one[0].l_fb == one[0].l_nofb);
        CHECK(one[0].l_fb == doctest::Approx(0.985500430305).epsilon(1e-9));
    }
    SUBCASE("eta = 0 list reduces to the no-feedback curve") {
        const auto rows = run_sweep(0.1, 0.4, 4, {0.0});
        for (const auto& r : rows) CHECK(r.l_fb == r.l_nofb);
    }
    SUBCASE("bad grids are rejected") {
        CHECK_THROWS_AS(run_sweep(0.3, 0.1, 3, {0.5}), Error);
        CHECK_THROWS_AS(run_sweep(0.1, 0.6, 3, {0.5}), Error);
        CHECK_THROWS_AS(run_sweep(0.1, 0.3, 0, {0.5}), Error);
        CHECK_THROWS_AS(run_sweep(0.1, 0.3, 3, {}), Error);
        CHECK_THROWS_AS(run_sweep(0.1, 0.3, 3, {1.5}), Error);
    }
}

TEST_CASE("CSV writes, parses, and recomputes") {
    const auto recs = run_sweep(0.2, 0.4, 3, {0.0, 0.5, 0.99});
    std::stringstream buffer;
    write_sweep_csv(buffer, recs);

    SUBCASE("byte-identical re-emission") {
        std::stringstream again;
        write_sweep_csv(again, run_sweep(0.2, 0.4, 3, {0.0, 0.5, 0.99}));
        CHECK(buffer.str() == again.str());
    }

    SUBCASE("round-trip reproduces l_fb from (chi, eta, lambda_star)") {
        const auto parsed = parse_sweep_csv(buffer);
        REQUIRE(parsed.size() == recs.size());
        for (const auto& row : parsed) {
            const ModelParams p{row.chi, row.eta, row.lambda_star, Complex{}};
            const double recomputed = log_negativity(closed_form_covariance(p));
            CHECK(std::abs(recomputed - row.l_fb) <= 1e-9);
        }
    }

    SUBCASE("malformed input is rejected") {
        std::stringstream bad_header("not,a,header\n");
        CHECK_THROWS_AS(parse_sweep_csv(bad_header), Error);
        std::stringstream bad_row(sweep_csv_header() + "\n0.1,0.2,oops\n");
        CHECK_THROWS_AS(parse_sweep_csv(bad_row), Error);
    }
}
