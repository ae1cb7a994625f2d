#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "gibbslab/model_file.hpp"
#include "gibbslab/models.hpp"

using namespace gibbslab;

namespace {
const std::string models_dir = GIBBSLAB_MODELS_DIR;
}

TEST_CASE("bundled three-component model parses to the builtin family") {
    model_file mf = parse_model(models_dir + "/example_5_2.model");
    CHECK(mf.d == 6);
    CHECK(mf.A.edge_count() == 28);
    CHECK(mf.family.N.size() == 16);
    CHECK(mf.has_sin);
    CHECK(mf.cls.T0.size() == 3);

    perturbation_family builtin = models::three_component(1.0);
    for (double eps : {1e-2, 1e-5}) {
        matrix<double> a = weighted_matrix(mf.family, eps);
        matrix<double> b = weighted_matrix(builtin, eps);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                CHECK(a(i, j) == Catch::Approx(b(i, j)).margin(1e-16));
    }

    // parameter override: s = 1.5 changes the 3->2 couplings
    model_file mf15 = parse_model(models_dir + "/example_5_2.model", {{"s", 1.5}});
    matrix<double> w = weighted_matrix(mf15.family, 1e-2);
    CHECK(w(4, 2) == Catch::Approx(std::pow(1e-2, 1.5)).epsilon(1e-13));
}

TEST_CASE("bundled four-component model parses to the builtin family") {
    model_file mf = parse_model(models_dir + "/example_5_3.model");
    CHECK(mf.d == 8);
    CHECK(mf.family.N.size() == 40);
    CHECK_FALSE(mf.has_sin);
    CHECK(mf.cls.T0.size() == 4);

    perturbation_family builtin = models::four_component();
    for (double eps : {1e-1, 1e-3}) {
        matrix<double> a = weighted_matrix(mf.family, eps);
        matrix<double> b = weighted_matrix(builtin, eps);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                CHECK(a(i, j) == Catch::Approx(b(i, j)).margin(1e-16));
    }
}

TEST_CASE("diagnostics carry line numbers and pair names") {
    // psi on a B-edge
    std::istringstream bad1(R"([meta]
d = 2
[A]
11
11
[B]
10
01
[phi]
block 1 1 : 0
block 1 2 : 0
block 2 1 : 0
block 2 2 : 0
[psi]
1 1 : log(eps)
)");
    try {
        parse_model(bad1);
        FAIL("expected throw");
    } catch (const model_parse_error& e) {
        CHECK(e.line == 15);
        CHECK(std::string(e.what()).find("(1,1)") != std::string::npos);
    }

    // empty phi section with a nonempty A
    std::istringstream bad2(R"([meta]
d = 2
[A]
11
11
[B]
11
11
[phi]
[psi]
)");
    CHECK_THROWS_MATCHES(parse_model(bad2), model_parse_error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("cover")));

    // malformed matrix row
    std::istringstream bad3(R"([meta]
d = 2
[A]
11
1
[B]
11
11
[phi]
block 1 1 : 0
[psi]
)");
    CHECK_THROWS_AS(parse_model(bad3), model_parse_error);

    // unknown section
    std::istringstream bad4("[meta]\nd = 1\n[junk]\n");
    CHECK_THROWS_MATCHES(parse_model(bad4), model_parse_error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("junk")));

    // expression error inside an entry, with its line number
    std::istringstream bad5(R"([meta]
d = 1
[A]
1
[B]
1
[phi]
1 1 : log(
[psi]
)");
    try {
        parse_model(bad5);
        FAIL("expected throw");
    } catch (const model_parse_error& e) {
        CHECK(e.line == 8);
    }
}

TEST_CASE("grid and eps0 settings are honored") {
    std::istringstream src(R"(
[meta]
d = 1
eps0 = 1/4
[A]
1
[B]
1
[phi]
1 1 : 0
[psi]
[grid]
lo = 1e-6
hi = 1e-2
per_decade = 2
)");
    model_file mf = parse_model(src);
    CHECK(mf.eps0 == 0.25);
    CHECK(mf.grid_lo == 1e-6);
    CHECK(mf.grid_hi == 1e-2);
    CHECK(mf.grid_per_decade == 2);
}
