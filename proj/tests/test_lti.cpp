#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dsoar/integrate.hpp"
#include "dsoar/lti.hpp"

using namespace dsoar;

namespace {

// Integrates a filter driven by input(t) with the engine stepper and returns
// the output trace sampled at every step.
std::vector<double> integrate_filter(const LinearFilter& f, double (*input)(double), double dt,
                                     double t_end) {
    std::vector<double> x(static_cast<std::size_t>(f.order()), 0.0);
    Rk4Workspace ws;
    std::vector<double> trace;
    const auto n = static_cast<long>(std::llround(t_end / dt));
    for (long i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) * dt;
        Eigen::Map<const Eigen::VectorXd> xe(x.data(), f.order());
        trace.push_back(f.output(xe, input(t)));
        if (i == n) break;
        auto rhs = [&](double tt, const std::vector<double>& xs, std::vector<double>& dx) {
            f.derivative(Eigen::Map<const Eigen::VectorXd>(xs.data(), f.order()), input(tt),
                         Eigen::Map<Eigen::VectorXd>(dx.data(), f.order()));
        };
        rk4_step(rhs, x, t, dt, ws);
    }
    return trace;
}

double unit_step(double) { return 1.0; }

}  // namespace

TEST_CASE("transfer function construction normalizes and validates") {
    TransferFunction tf({2.0}, {2.0, 4.0});
    CHECK(tf.den() == std::vector<double>{1.0, 2.0});
    CHECK(tf.num() == std::vector<double>{1.0});

    CHECK_THROWS_AS(TransferFunction({1.0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(TransferFunction({1.0}, {0.0, 0.0}), std::invalid_argument);

    // The proper factory rejects what the plain constructor admits.
    CHECK_NOTHROW(TransferFunction({1.0, 0.0}, {1.0}));
    CHECK_THROWS_AS(TransferFunction::proper({1.0, 0.0}, {1.0}), ImproperTransferFunction);
}

TEST_CASE("tf_multiply convolves without cancelling") {
    SUBCASE("identity after explicit cancellation stays uncancelled") {
        TransferFunction a({1.0}, {1.0, 1.0});
        TransferFunction b({1.0, 1.0}, {1.0});
        TransferFunction p = a * b;
        CHECK(p.num() == std::vector<double>{1.0, 1.0});
        CHECK(p.den() == std::vector<double>{1.0, 1.0});
    }

    SUBCASE("cubic expansion against the hand oracle") {
        // (s+0.1)(s+8.8)(s+8.1) = s^3 + 17 s^2 + 72.97 s + 7.128
        TransferFunction a({1.0, 0.0, 2.25}, {1.0});
        TransferFunction b({1.0},
                           polynomial_multiply(polynomial_multiply({1.0, 0.1}, {1.0, 8.8}),
                                               {1.0, 8.1}));
        TransferFunction p = a * b;
        REQUIRE(p.den().size() == 4);
        CHECK(p.num()[0] == doctest::Approx(1.0));
        CHECK(p.num()[1] == doctest::Approx(0.0));
        CHECK(p.num()[2] == doctest::Approx(2.25));
        CHECK(p.den()[0] == doctest::Approx(1.0));
        CHECK(p.den()[1] == doctest::Approx(17.0));
        CHECK(p.den()[2] == doctest::Approx(72.97));
        CHECK(p.den()[3] == doctest::Approx(7.128));
    }

    SUBCASE("multiplicative identity") {
        TransferFunction h({1.0, 2.0, 3.0}, {1.0, 4.0, 5.0, 6.0});
        TransferFunction p = h * TransferFunction();
        CHECK(p.num() == h.num());
        CHECK(p.den() == h.den());
    }

    SUBCASE("degree additivity on random factors") {
        std::mt19937 rng(42);
        std::uniform_int_distribution<int> deg(0, 4);
        std::uniform_real_distribution<double> coeff(-3.0, 3.0);
        auto random_poly = [&](int d) {
            std::vector<double> c(static_cast<std::size_t>(d) + 1);
            for (double& v : c) v = coeff(rng);
            if (c[0] == 0.0) c[0] = 1.0;
            return c;
        };
        for (int trial = 0; trial < 50; ++trial) {
            const int na = deg(rng), da = deg(rng), nb = deg(rng), db = deg(rng);
            TransferFunction a(random_poly(na), random_poly(da));
            TransferFunction b(random_poly(nb), random_poly(db));
            TransferFunction p = a * b;
            CHECK(p.numerator_degree() == a.numerator_degree() + b.numerator_degree());
            CHECK(p.denominator_degree() == a.denominator_degree() + b.denominator_degree());
        }
    }
}

TEST_CASE("poles, hurwitz and properness predicates") {
    SUBCASE("factored cubic") {
        TransferFunction tf({1.0}, polynomial_multiply(polynomial_multiply({1.0, 0.1}, {1.0, 8.8}),
                                                       {1.0, 8.1}));
        auto p = tf.poles();
        REQUIRE(p.size() == 3);
        // sorted by real part ascending
        CHECK(p[0].real() == doctest::Approx(-8.8));
        CHECK(p[1].real() == doctest::Approx(-8.1));
        CHECK(p[2].real() == doctest::Approx(-0.1));
        CHECK(tf.is_hurwitz());
    }

    SUBCASE("pure imaginary pair is not hurwitz") {
        TransferFunction tf({1.0}, {1.0, 0.0, 8.2 * 8.2});
        auto p = tf.poles();
        REQUIRE(p.size() == 2);
        CHECK(p[0].real() == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(std::abs(p[0].imag()) == doctest::Approx(8.2));
        CHECK_FALSE(tf.is_hurwitz());
    }

    SUBCASE("degree comparisons") {
        TransferFunction tf({1.0, 0.0, 1.0}, {1.0, 1.0, 1.0, 1.0});
        CHECK(tf.is_proper());
        CHECK(tf.is_strictly_proper());
        TransferFunction biproper({1.0, 0.0}, {1.0, 1.0});
        CHECK(biproper.is_proper());
        CHECK_FALSE(biproper.is_strictly_proper());
    }

    SUBCASE("product poles are the multiset union of factor poles") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> pole(-5.0, -0.2);
        for (int trial = 0; trial < 20; ++trial) {
            const double p1 = pole(rng), p2 = pole(rng), p3 = pole(rng);
            TransferFunction a({1.0}, polynomial_multiply({1.0, -p1}, {1.0, -p2}));
            TransferFunction b({1.0}, {1.0, -p3});
            auto roots = (a * b).poles();
            std::vector<double> expected{p1, p2, p3};
            std::sort(expected.begin(), expected.end());
            REQUIRE(roots.size() == 3);
            for (std::size_t i = 0; i < 3; ++i)
                CHECK(roots[i].real() == doctest::Approx(expected[i]).epsilon(1e-7));
        }
    }
}

TEST_CASE("controllable canonical realization") {
    SUBCASE("unity passthrough") {
        LinearFilter f{TransferFunction()};
        CHECK(f.order() == 0);
        CHECK(f.D() == doctest::Approx(1.0));
        CHECK(f.output(Eigen::VectorXd(), 3.5) == doctest::Approx(3.5));
    }

    SUBCASE("case-1 block: three states, frozen DC gain") {
        TransferFunction tf({1.0, 0.0, 2.25}, {1.0, 17.0, 72.97, 7.128});
        LinearFilter f{tf};
        CHECK(f.order() == 3);
        CHECK(f.D() == doctest::Approx(0.0));
        CHECK(tf.dc_gain() == doctest::Approx(2.25 / 7.128));  // == 0.31565656...
        CHECK(tf.dc_gain() == doctest::Approx(0.31566).epsilon(1e-4));
    }

    SUBCASE("differentiator-like high pass blocks DC") {
        TransferFunction tf({1.0, 0.0}, {1.0, 0.4});
        LinearFilter f{tf};
        CHECK(f.order() == 1);
        CHECK(tf.dc_gain() == doctest::Approx(0.0));
        CHECK(f.D() == doctest::Approx(1.0));
    }

    SUBCASE("improper source refuses realization") {
        TransferFunction improper({1.0, 0.0, 0.0}, {1.0, 1.0});
        CHECK_THROWS_AS(LinearFilter{improper}, ImproperTransferFunction);
    }
}

TEST_CASE("filter as an ODE right-hand side") {
    SUBCASE("first-order low-pass step response against the closed form") {
        LinearFilter f{TransferFunction({0.01}, {1.0, 0.01})};
        auto trace = integrate_filter(f, unit_step, 1e-2, 100.0);
        const double expected = 1.0 - std::exp(-0.01 * 100.0);  // 0.63212...
        CHECK(trace.back() == doctest::Approx(expected).epsilon(1e-4));
        CHECK(trace.back() == doctest::Approx(0.6321).epsilon(2e-4));
    }

    SUBCASE("high pass rejects DC") {
        LinearFilter f{TransferFunction({1.0, 0.0}, {1.0, 0.5})};
        auto trace = integrate_filter(f, unit_step, 1e-3, 40.0);
        CHECK(std::abs(trace.back()) < 1e-8);
    }

    SUBCASE("zero input and zero state stay at zero") {
        LinearFilter f{TransferFunction({1.0, 2.0}, {1.0, 3.0, 2.0})};
        auto zero = [](double) { return 0.0; };
        auto trace = integrate_filter(f, zero, 1e-2, 5.0);
        for (double y : trace) CHECK(y == 0.0);
    }

    SUBCASE("realization round-trip against the partial-fraction oracle") {
        // Random strictly proper functions assembled from distinct stable
        // real poles and residues; the analytic step response is
        // sum_i r_i (e^{p_i t} - 1)/p_i.
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> pole_dist(-3.0, -0.5);
        std::uniform_real_distribution<double> res_dist(-2.0, 2.0);
        for (int trial = 0; trial < 6; ++trial) {
            const int n = 1 + trial % 3;
            std::vector<double> poles, residues;
            for (int i = 0; i < n; ++i) {
                double p;
                bool distinct;
                do {
                    p = pole_dist(rng);
                    distinct = true;
                    for (double q : poles)
                        if (std::abs(p - q) < 0.15) distinct = false;
                } while (!distinct);
                poles.push_back(p);
                residues.push_back(res_dist(rng));
            }
            // Assemble sum_i r_i/(s - p_i) over the common denominator.
            std::vector<double> den{1.0};
            for (double p : poles) den = polynomial_multiply(den, {1.0, -p});
            std::vector<double> num(den.size() - 1, 0.0);
            for (int i = 0; i < n; ++i) {
                std::vector<double> term{residues[static_cast<std::size_t>(i)]};
                for (int j = 0; j < n; ++j)
                    if (j != i)
                        term = polynomial_multiply(term, {1.0, -poles[static_cast<std::size_t>(j)]});
                for (std::size_t k = 0; k < term.size(); ++k)
                    num[num.size() - term.size() + k] += term[k];
            }
            LinearFilter f{TransferFunction(num, den)};

            const double slowest = *std::max_element(poles.begin(), poles.end());
            const double horizon = 10.0 / std::abs(slowest);
            const double dt = 1e-3;
            auto trace = integrate_filter(f, unit_step, dt, horizon);
            for (std::size_t k = 0; k < trace.size(); k += 199) {
                const double t = static_cast<double>(k) * dt;
                double expected = 0.0;
                for (int i = 0; i < n; ++i)
                    expected += residues[static_cast<std::size_t>(i)] *
                                (std::exp(poles[static_cast<std::size_t>(i)] * t) - 1.0) /
                                poles[static_cast<std::size_t>(i)];
                REQUIRE(trace[k] == doctest::Approx(expected).epsilon(1e-6).scale(1.0));
            }
        }
    }
}

TEST_CASE("equilibrium state settles a stable filter") {
    LinearFilter f{TransferFunction({1.0, 0.0, 2.25}, {1.0, 17.0, 72.97, 7.128})};
    const double input = 20.0;
    Eigen::VectorXd eq = f.equilibrium_state(input);
    Eigen::VectorXd deriv(f.order());
    f.derivative(eq, input, deriv);
    CHECK(deriv.norm() < 1e-10);
    CHECK(f.output(eq, input) == doctest::Approx(input * 2.25 / 7.128));
}
