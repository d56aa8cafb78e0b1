#include "doctest.h"

#include "confnet/connmass.hpp"
#include "confnet/errors.hpp"
#include "confnet/pfc_analytic.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using confnet::ConnectionModel;
using confnet::PathLossParams;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("SIMO closed form") {
    const PathLossParams p{0.7, 3.0, 3};
    const auto m = ConnectionModel::simo_miso(4, p);
    CHECK(rel(confnet::mass_simo_closed(4, p).value, 1.9047619047619047619) < 1e-13);
    CHECK(rel(confnet::mass_quadrature(m).value, 1.9047619047619047619) < 1e-10);
    CHECK(confnet::mass_quadrature(m).method == confnet::MassMethod::Quadrature);
    CHECK(rel(confnet::mass_closed(ConnectionModel::siso({1.0, 2.0, 2})).value, 0.5) < 1e-15);
}

TEST_CASE("MIMO closed forms") {
    const double m22 = 2.3912381435122417578;
    const PathLossParams p{1.0, 2.0, 3};
    CHECK(rel(confnet::mass_mimo_closed(2, p).value, m22) < 1e-13);
    CHECK(rel(confnet::mass_mimo_n2(p), m22) < 1e-13);
    CHECK(rel(confnet::mass_quadrature(ConnectionModel::mimo(2, 2, p)).value, m22) < 1e-11);
    CHECK(rel(confnet::mimo22_mass_constant(), m22) < 1e-14);
    CHECK(rel(confnet::mass_mimo_closed(5, {1.3, 4.0, 2}).value, 1.1809064488648725847) < 1e-12);
    CHECK(rel(confnet::mass_mimo_closed(3, p).value, 3.8275646270173727073) < 1e-12);
    CHECK(rel(confnet::mass_quadrature(ConnectionModel::mimo(2, 3, p)).value, 3.8275646270173727073) < 1e-10);
}

TEST_CASE("closed forms agree with quadrature on a sampled grid") {
    for (int d = 1; d <= 3; ++d) {
        for (double eta : {2.0, 3.5}) {
            for (double beta : {0.5, 2.0}) {
                const PathLossParams p{beta, eta, d};
                for (int k : {1, 3, 8}) {
                    const auto simo = ConnectionModel::simo_miso(k, p);
                    CHECK(rel(confnet::mass_closed(simo).value, confnet::mass_quadrature(simo).value) < 1e-9);
                }
                for (int n : {2, 4, 7}) {
                    const auto mimo = ConnectionModel::mimo(2, n, p);
                    CHECK(rel(confnet::mass_closed(mimo).value, confnet::mass_quadrature(mimo).value) < 1e-9);
                }
                CHECK(rel(confnet::mass_mimo_n2(p), confnet::mass_mimo_closed(2, p).value) < 1e-12);
            }
        }
    }
}

TEST_CASE("unit disk mass") {
    for (int d = 1; d <= 3; ++d) {
        const auto disk = ConnectionModel::unit_disk(1.7, {1.0, 2.0, d});
        const double expect = std::pow(1.7, d) / d;
        CHECK(rel(confnet::mass_closed(disk).value, expect) < 1e-15);
        CHECK(rel(confnet::mass_quadrature(disk).value, expect) < 1e-12);
    }
}

TEST_CASE("leading order and step approximation") {
    const PathLossParams p{1.0, 2.0, 3};
    CHECK(rel(confnet::mass_step_approx(8, p).value, std::pow(8.0, 1.5) / 3.0) < 1e-15);
    CHECK(rel(confnet::mass_scaling_leading(ConnectionModel::simo_miso(8, p)), std::pow(8.0, 1.5) / 3.0) < 1e-15);
    CHECK_THROWS_AS(confnet::mass_scaling_leading(ConnectionModel::siso(p)), confnet::CapabilityError);
    CHECK_THROWS_AS(confnet::mass_step_approx(1, p), confnet::DomainError);
}

TEST_CASE("step-function errors") {
    const auto e2 = confnet::step_error(2, {1.0, 2.0, 3});
    CHECK(rel(e2.eps_minus, -0.071816063513550202728) < 1e-9);
    CHECK(rel(e2.eps_plus, 1.5202451654437285947) < 1e-9);
    const auto e32 = confnet::step_error(32, {1.0, 2.0, 2});
    CHECK(rel(e32.eps_minus, -0.12515291147272482315) < 1e-9);
    CHECK(rel(e32.eps_plus, 3.3042490314076655121) < 1e-9);
}

TEST_CASE("property: M' = step approximation + eps(n), with eps- <= 0 <= eps+") {
    for (auto [d, eta] : {std::pair{3, 2.0}, std::pair{2, 4.0}, std::pair{1, 3.0}}) {
        for (int n : {2, 5, 16, 40}) {
            const PathLossParams p{1.3, eta, d};
            const auto e = confnet::step_error(n, p);
            CHECK(e.eps_minus <= 0.0);
            CHECK(e.eps_plus >= 0.0);
            CHECK(rel(confnet::mass_step_approx(n, p).value + e.total(), confnet::mass_mimo_closed(n, p).value) < 1e-9);
        }
    }
}

TEST_CASE("log-log fits") {
    const std::vector<double> x = {1, 2, 4, 8, 16};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * std::pow(v, -0.7));
    CHECK(std::abs(confnet::loglog_slope(x, y) + 0.7) < 1e-13);
    CHECK_THROWS_AS(confnet::loglog_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), confnet::DomainError);

    const std::vector<int> too_few = {4, 8, 32};
    const std::vector<int> too_narrow = {4, 5, 6, 7};
    CHECK_THROWS_AS(confnet::error_order_fit(too_few, {}), confnet::DomainError);
    CHECK_THROWS_AS(confnet::error_order_fit(too_narrow, {}), confnet::DomainError);

    const std::vector<int> ks = {4, 8, 16, 32, 64};
    // With d = eta the SIMO correction vanishes identically: no slope exists.
    CHECK_THROWS_AS(confnet::scaling_correction_slope(ConnectionModel::simo_miso(4, {1.0, 3.0, 3}), ks),
                    confnet::DomainError);
    CHECK(std::abs(confnet::scaling_correction_slope(ConnectionModel::simo_miso(4, {1.0, 2.0, 3}), ks) + 1.0) < 0.15);
    CHECK(std::abs(confnet::scaling_correction_slope(ConnectionModel::mimo(2, 4, {1.0, 2.0, 3}), ks) + 0.5) < 0.15);
}

TEST_CASE("quadrature truncation is certified") {
    const auto m = ConnectionModel::mimo(2, 30, {0.5, 2.0, 3});
    const double r = confnet::mass_cutoff_radius(m);
    CHECK(confnet::pair_connectedness(m, r) < 1e-30);
}
