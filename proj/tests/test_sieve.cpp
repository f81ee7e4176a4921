#include <catch2/catch.hpp>

#include <cstdio>

#include "hecke/sieve.hpp"

using namespace hecke;

TEST_CASE("selberg G shape") {
    double X = 10000.0;
    CHECK(selberg_G(0.0, X) == 1.0);
    CHECK(selberg_G(0.5, X) == Approx(0.5));
    CHECK(selberg_G(1.2, X) == 0.0);
    CHECK(selberg_G(-1.0, X) == 0.0);
    CHECK_THROWS_AS(selberg_G(0.5, 10.0), std::domain_error);
    // plateau: equals 1 - t up to 1 - 1/log log X
    double collar = 1.0 / std::log(std::log(X));
    double edge = 1.0 - collar;
    CHECK(selberg_G(edge - 1e-9, X) == Approx(1.0 - (edge - 1e-9)));
    // inside the collar it drops below 1 - t and stays nonnegative
    double t = 1.0 - 0.25 * collar;
    CHECK(selberg_G(t, X) >= 0.0);
    CHECK(selberg_G(t, X) <= 1.0 - t);
    // derivative growth stays O(1): |G'| bounded independent of X near 1
    for (double XX : {100.0, 1e6}) {
        double cc = 1.0 / std::log(std::log(XX));
        double h = cc * 1e-3;
        double worst = 0.0;
        for (double u = 1.0 - cc; u < 1.0 - h; u += h) {
            worst = std::max(worst, std::abs(selberg_G(u + h, XX) - selberg_G(u, XX)) / h);
        }
        CHECK(worst < 4.0);
    }
}

TEST_CASE("sieve parameters at X = 10^4") {
    SieveParams p = SieveParams::from_x(10000.0, 0.15295);
    CHECK(p.z0 == Approx(8.134903).margin(1e-5));
    CHECK(p.r0 == 2);
    CHECK(p.radius == Approx(std::pow(10000.0, 0.15295)));
    CHECK(p.support == Approx(p.radius * p.radius * std::exp(2.0 * std::pow(std::log(10000.0), 2.0 / 3.0))));
}

TEST_CASE("lambda at X = 10^4 defaults") {
    SieveWeights w = build_lambda(10000.0, 0.15295);

    SECTION("lambda_1 = 1 exactly") {
        CHECK(w.at(kOne) == 1.0);
    }
    SECTION("small primes inside P(z0) get -1") {
        CHECK(w.at(GaussInt{-1, -2}) == Approx(-1.0));
        CHECK(w.at(GaussInt{-1, 2}) == Approx(-1.0));
    }
    SECTION("support bound and squarefree keys") {
        for (const auto& [d, v] : w.lambda) {
            REQUIRE(to_double(norm(d)) <= w.params.support * (1.0 + 1e-12));
            REQUIRE(std::abs(v) > 0.0);
            if (is_odd(d)) REQUIRE(is_squarefree(factor(d)));
        }
    }
    SECTION("zero off the support") {
        CHECK(w.at(GaussInt{-3, 0}) == 0.0);       // norm 9 > z0, radius too small
        CHECK(w.at(GaussInt{-1000001, 0}) == 0.0);
    }
}

TEST_CASE("sieve inequality on its working range at X = 10^4") {
    SieveWeights w = build_lambda(10000.0, 0.15295);
    double working_floor = std::max(w.params.z0, w.params.radius);
    int checked = 0, prime_hits = 0;
    int exceptional = 0;
    for (const GaussInt& z : enumerate_primary(10000)) {
        bool ok = sieve_upper_check(z, w);
        double nz = to_double(norm(z));
        if (nz > working_floor) {
            REQUIRE(ok);
            ++checked;
            if (is_prime_element(z)) ++prime_hits;
        } else if (!ok) {
            // the construction offers no majorant for primes dividing P(z0)
            REQUIRE(is_prime_element(z));
            ++exceptional;
        }
    }
    CHECK(checked > 3000);
    CHECK(prime_hits > 500);
    // at these parameters exactly the two norm-5 primes are exceptional
    CHECK(exceptional == 2);
}

TEST_CASE("lambda with overrides exercises the Selberg pairs") {
    // z0 = 3 keeps only the ramified prime in P(z0); R = 30 brings in the
    // norm-5, 9, 13, 17, 25, 29 range for the Lambda^2 part
    SieveOverrides ov;
    ov.z0 = 3.0;
    ov.radius = 30.0;
    SieveWeights w = build_lambda(10000.0, 0.15295, ov);
    CHECK(w.at(kOne) == 1.0);

    // identity: sum_{d|n} lambda_d = Brun(n) * Selberg(n)^2
    double X = 10000.0;
    double logR = std::log(30.0);
    auto brun = [&](const GaussInt& n) {
        // b | (n, P(z0)) with omega <= 2 r0; P(z0) = (1+i), and n odd
        return 1.0;
    };
    auto selberg = [&](const GaussInt& n) {
        FactoredElement fe = factor(n);
        double acc = 0.0;
        std::size_t np = fe.factors.size();
        for (u64 mask = 0; mask < (u64(1) << np); ++mask) {
            GaussInt d = kOne;
            bool sqfree = true;
            for (std::size_t i = 0; i < np; ++i)
                if (mask & (u64(1) << i)) d = d * fe.factors[i].first;
            if (!sqfree) continue;
            double nd = to_double(norm(d));
            if (nd > 30.0 || nd <= 1.0) {
                if (!d.is_one()) continue;
            }
            int mu = mobius(factor(d));
            double g = d.is_one() ? selberg_G(0.0, X) : selberg_G(std::log(nd) / logR, X);
            acc += double(mu) * g;
        }
        return acc;
    };
    for (const GaussInt& n : enumerate_primary(900)) {
        double lhs = lambda_divisor_sum(n, w);
        double rhs = brun(n) * selberg(n) * selberg(n);
        REQUIRE(lhs == Approx(rhs).margin(1e-10));
    }
}

TEST_CASE("lambda dump") {
    SieveWeights w = build_lambda(10000.0, 0.15295);
    std::string path = "/tmp/hecke_lambda_test.txt";
    dump_lambda(w, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string first;
    std::getline(in, first);
    CHECK(first == "1,0,1,1");
    std::remove(path.c_str());
}

TEST_CASE("triple guard") {
    SieveOverrides ov;
    ov.z0 = 3.0;
    ov.radius = 400.0;
    ov.max_triples = 10;
    CHECK_THROWS_AS(build_lambda(1e6, 0.15, ov), std::runtime_error);
}
