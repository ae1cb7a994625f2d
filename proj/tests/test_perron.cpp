#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "gibbslab/models.hpp"
#include "gibbslab/perron.hpp"
#include "gibbslab/weights.hpp"

using namespace gibbslab;

namespace {

matrix<double> random_positive(std::mt19937& rng, int d) {
    std::uniform_real_distribution<double> u(0.05, 2.0);
    matrix<double> m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = u(rng);
    return m;
}

matrix<double> random_irreducible(std::mt19937& rng, int d, double density) {
    std::uniform_real_distribution<double> u(0.05, 2.0);
    std::uniform_real_distribution<double> pick(0, 1);
    matrix<double> m(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j)
            if (pick(rng) < density) m(i, j) = u(rng);
        m(i, (i + 1) % d) = u(rng);
    }
    return m;
}

// real Perron root of the 6-state oscillatory model via the depressed cubic
// x^3 = 4 eps^{1+s} x + 8 eps^{2 + sin(1/eps)/3 + 1}, complex arithmetic
double cardano_lambda_52(double eps, double s) {
    double uexp = std::sin(1.0 / eps) / 3.0 + 1.0;
    std::complex<double> K = 108.0 * std::pow(eps, 2.0 + uexp) +
                             12.0 * std::sqrt(std::complex<double>(
                                 -12.0 * std::pow(eps, 3.0 * (s + 1.0)) +
                                 81.0 * std::pow(eps, 4.0 + 2.0 * uexp)));
    std::complex<double> K13 = std::pow(K, 1.0 / 3.0);
    std::complex<double> x = K13 / 3.0 + 4.0 * std::pow(eps, s + 1.0) / K13;
    return 2.0 + x.real();
}

} // namespace

TEST_CASE("perron data of small exact cases") {
    matrix<double> j2(2, 2);
    for (auto& v : j2.a) v = 1.0;
    perron_data_t<double> pd = perron_data(j2);
    CHECK(pd.irreducible);
    CHECK(pd.eta == Catch::Approx(2.0).epsilon(1e-15));
    CHECK(pd.right[0] == Catch::Approx(0.5).epsilon(1e-14));
    CHECK(pd.right[1] == Catch::Approx(0.5).epsilon(1e-14));
    CHECK(pd.left[0] == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(pd.left[1] == Catch::Approx(1.0).epsilon(1e-14));

    // the four-component example's second block at eps = 0.1
    matrix<double> blk(2, 2);
    blk(0, 0) = 2;
    blk(0, 1) = 1;
    blk(1, 0) = 1.11;
    blk(1, 1) = 2.11;
    CHECK(perron_data(blk).eta == Catch::Approx(3.11).epsilon(1e-13));

    matrix<double> zero(3, 3);
    perron_data_t<double> z = perron_data(zero);
    CHECK(z.eta == 0.0);
    CHECK(z.degenerate);
    CHECK(z.right[0] == Catch::Approx(1.0 / 3));
    CHECK(max_abs(z.left) == 0.0);
}

TEST_CASE("residuals on random irreducible matrices") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        int d = 2 + static_cast<int>(rng() % 5);
        matrix<double> w = random_irreducible(rng, d, 0.6);
        perron_data_t<double> pd = perron_data(w);
        REQUIRE(pd.irreducible);
        std::vector<double> wb = mul(w, pd.right);
        std::vector<double> cw = mul_left(pd.left, w);
        double rb = 0, rc = 0;
        for (int i = 0; i < d; ++i) {
            rb = std::max(rb, std::fabs(wb[i] - pd.eta * pd.right[i]));
            rc = std::max(rc, std::fabs(cw[i] - pd.eta * pd.left[i]));
        }
        CHECK(rb <= 1e-12 * pd.eta);
        CHECK(rc <= 1e-12 * pd.eta);
        double sum_b = 0, dot = 0;
        for (int i = 0; i < d; ++i) {
            sum_b += pd.right[i];
            dot += pd.right[i] * pd.left[i];
            CHECK(pd.right[i] > 0);
            CHECK(pd.left[i] > 0);
        }
        CHECK(sum_b == Catch::Approx(1.0).epsilon(1e-13));
        CHECK(dot == Catch::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("spectral radius conventions and oracle") {
    matrix<double> z(1, 1);
    CHECK(spectral_radius(z) == 0.0);

    matrix<double> tri(2, 2);
    tri(0, 0) = 2;
    tri(0, 1) = 1;
    tri(1, 1) = 3;
    CHECK(spectral_radius(tri) == Catch::Approx(3.0).epsilon(1e-14));

    perturbation_family f = models::three_component(1.0);
    double eps = 1e-2;
    double lam = spectral_radius(weighted_matrix(f, eps));
    CHECK(std::fabs(lam - cardano_lambda_52(eps, 1.0)) < 1e-10);
}

TEST_CASE("spectral radius equals max block perron root") {
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> u(0.05, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        int d = 2 + static_cast<int>(rng() % 5);
        matrix<double> w(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (rng() % 3 == 0) w(i, j) = u(rng);
        transition_matrix sup(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) sup.set(i, j, w(i, j) > 0);
        component_decomposition dec = scc_decompose(sup);
        double best = 0;
        for (const component& blk : dec.blocks) {
            matrix<double> sub = principal_submatrix(w, blk.states);
            perron_data_t<double> pd = perron_data(sub);
            best = std::max(best, pd.eta);
        }
        CHECK(spectral_radius(w) == Catch::Approx(best).margin(1e-12));
    }
}

TEST_CASE("charpoly route agrees with the iterative solver") {
    std::mt19937 rng(808);
    for (int trial = 0; trial < 50; ++trial) {
        int d = 2 + static_cast<int>(rng() % 3);
        matrix<double> w = random_positive(rng, d);
        double a = spectral_radius(w);
        double b = spectral_radius_charpoly(w);
        CHECK(std::fabs(a - b) <= 1e-11 * std::max(1.0, a));
    }
    matrix<double> big(5, 5);
    CHECK_THROWS_AS(spectral_radius_charpoly(big), std::invalid_argument);
}

TEST_CASE("adjugate identities") {
    std::mt19937 rng(31415);
    // 2x2: adj(ii) = eta - eta(other diagonal entry)
    for (int trial = 0; trial < 20; ++trial) {
        matrix<double> w = random_positive(rng, 2);
        double eta = spectral_radius(w);
        CHECK(adjugate_entry(w, eta, 0, 0) == Catch::Approx(eta - w(1, 1)).epsilon(1e-12));
        CHECK(adjugate_entry(w, eta, 1, 1) == Catch::Approx(eta - w(0, 0)).epsilon(1e-12));
    }

    // identity 3x3 at eta = 1: every adjugate entry of the zero matrix vanishes
    matrix<double> id = matrix<double>::identity(3);
    for (int i = 0; i < 3; ++i) CHECK(adjugate_entry(id, 1.0, i, i) == 0.0);

    // eigenvector products against adjugate entries: c(j) b(i) sum_k adj(kk) = adj(ji)
    for (int trial = 0; trial < 50; ++trial) {
        int d = 2 + static_cast<int>(rng() % 5);
        matrix<double> w = random_irreducible(rng, d, 0.7);
        perron_data_t<double> pd = perron_data(w);
        double tr = 0;
        for (int k = 0; k < d; ++k) tr += adjugate_entry(w, pd.eta, k, k);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double lhs = pd.left[j] * pd.right[i] * tr;
                double rhs = adjugate_entry(w, pd.eta, j, i);
                CHECK(std::fabs(lhs - rhs) <= 1e-8 * std::max(1.0, std::fabs(tr)));
            }
        // ratio forms
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                double num = adjugate_entry(w, pd.eta, 0, i);
                double den = adjugate_entry(w, pd.eta, 0, k);
                if (std::fabs(den) > 1e-12)
                    CHECK(pd.right[i] / pd.right[k] == Catch::Approx(num / den).epsilon(1e-7));
            }
    }
}

TEST_CASE("simple path enumeration") {
    auto sp = simple_paths(0, 2, {1});
    REQUIRE(sp.size() == 2);
    CHECK(sp[0] == std::vector<int>{0, 1, 2});
    CHECK(sp[1] == std::vector<int>{0, 2});

    auto loop = simple_paths(0, 0, {});
    REQUIRE(loop.size() == 1);
    CHECK(loop[0] == std::vector<int>{0});

    CHECK(simple_paths(0, 3, {1, 2}).size() == 5);
    CHECK(simple_paths(0, 0, {1, 2}).size() == 1);   // i = j keeps only the singleton
}

TEST_CASE("adjugate diagonal decomposition") {
    std::mt19937 rng(6021);
    // 2x2 closed form
    matrix<double> w2 = random_positive(rng, 2);
    auto dec2 = adjugate_diag_decomposition(w2, 0);
    CHECK(dec2.sum == Catch::Approx(spectral_radius(w2) - w2(1, 1)).epsilon(1e-12));

    // 3x3: expansion, adjugate and the closed form all agree
    for (int trial = 0; trial < 20; ++trial) {
        matrix<double> w = random_positive(rng, 3);
        double eta = spectral_radius(w);
        for (int k = 0; k < 3; ++k) {
            auto dec = adjugate_diag_decomposition(w, k);
            double adj = adjugate_entry(w, eta, k, k);
            CHECK(std::fabs(dec.sum - adj) <= 1e-10 * std::max(1.0, std::fabs(adj)));
            REQUIRE(dec.closed_form_3x3.has_value());
            CHECK(std::fabs(*dec.closed_form_3x3 - adj) <= 1e-10 * std::max(1.0, std::fabs(adj)));
        }
    }

    // 4x4 against the determinant oracle
    for (int trial = 0; trial < 20; ++trial) {
        matrix<double> w = random_positive(rng, 4);
        double eta = spectral_radius(w);
        for (int k = 0; k < 4; ++k) {
            auto dec = adjugate_diag_decomposition(w, k);
            double adj = adjugate_entry(w, eta, k, k);
            CHECK(std::fabs(dec.sum - adj) <= 1e-8 * std::max(1.0, std::fabs(adj)));
        }
    }

    matrix<double> w7 = random_positive(rng, 7);
    CHECK_THROWS_AS(adjugate_diag_decomposition(w7, 0), std::invalid_argument);
}

TEST_CASE("perturbed matrix family checks") {
    // diagonally dominant 2x2 with couplings eps and eps^2
    auto fam = [](double eps) {
        matrix<double> m(2, 2);
        m(0, 0) = 1.0;
        m(0, 1) = eps;
        m(1, 0) = eps * eps;
        m(1, 1) = 0.5;
        return m;
    };
    std::vector<double> grid;
    for (int k = 2; k <= 8; ++k) grid.push_back(std::pow(10.0, -k));
    perturbed_family_report rep = check_perturbed_matrix_family(fam, grid);
    CHECK(rep.all());
    CHECK(rep.T0 == std::vector<int>{0});
    CHECK(rep.T1 == std::vector<int>{1});
    CHECK(rep.ratios_bounded);
    CHECK(rep.ratio_min_b >= 0.5);
    CHECK(rep.ratio_max_b <= 2.0 + 1e-9);

    // a constant irreducible family passes trivially with empty T1
    auto cfam = [](double) {
        matrix<double> m(2, 2);
        m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 1.0;
        return m;
    };
    perturbed_family_report crep = check_perturbed_matrix_family(cfam, grid);
    CHECK(crep.all());
    CHECK(crep.T1.empty());
    CHECK(crep.ratios_bounded);

    // support change breaks (M.1)
    auto sfam = [](double eps) {
        matrix<double> m(2, 2);
        m(0, 0) = 1.0;
        m(1, 1) = 0.5;
        m(0, 1) = eps < 1e-5 ? 0.0 : eps;
        m(1, 0) = eps;
        return m;
    };
    CHECK_FALSE(check_perturbed_matrix_family(sfam, grid).m1_support_constant);
}
