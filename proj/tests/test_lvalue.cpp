#include <catch2/catch.hpp>

#include <cstdio>
#include <map>
#include <random>

#include "hecke/lvalue.hpp"

using namespace hecke;

namespace {

std::shared_ptr<const NormSieve> shared_sieve(u64 limit) {
    static std::map<u64, std::shared_ptr<const NormSieve>> cache;
    auto it = cache.find(limit);
    if (it != cache.end()) return it->second;
    auto sv = std::make_shared<NormSieve>(sieve_primes(limit));
    cache[limit] = sv;
    return sv;
}

std::mt19937_64 rng(0x1f2e3d4c);

}  // namespace

TEST_CASE("SquarefreeCharacter agrees with chi_eval") {
    auto sv = shared_sieve(20000);
    std::uniform_int_distribution<std::size_t> pick(0, sv->primes.size() - 1);
    const CharTable& tab = char_tables();

    SECTION("prime conductors, split and inert") {
        int done = 0;
        while (done < 40) {
            GaussInt d = sv->primes[pick(rng)];
            SquarefreeCharacter chi(d, tab);
            GaussInt c = pow(kOnePlusI, 5) * d;
            for (int t = 0; t < 40; ++t) {
                const GaussInt& n = sv->primes[pick(rng)];
                REQUIRE(chi(n) == chi_eval(c, n));
            }
            ++done;
        }
    }

    SECTION("composite squarefree conductors") {
        int done = 0;
        while (done < 25) {
            GaussInt a = sv->primes[pick(rng) % 500];
            GaussInt b = sv->primes[pick(rng) % 500];
            if (a == b) continue;
            GaussInt d = primary_associate(a * b).second;
            SquarefreeCharacter chi(d, tab);
            GaussInt c = pow(kOnePlusI, 5) * d;
            for (int t = 0; t < 25; ++t) {
                const GaussInt& n = sv->primes[pick(rng)];
                REQUIRE(chi(n) == chi_eval(c, n));
            }
            ++done;
        }
    }

    SECTION("rejects non-squarefree d") {
        GaussInt p = sv->primes[3];
        CHECK_THROWS_AS(SquarefreeCharacter(primary_associate(p * p).second, tab),
                        std::domain_error);
    }
}

TEST_CASE("afe cutoff shape") {
    AfeConfig cfg;
    // floors govern small conductors
    CHECK(afe_cutoff(1, 9, cfg) == u64(60.0 * 3.0));
    CHECK(afe_cutoff(2, 9, cfg) == u64(640.0 * 9.0));
    // multiplier rule takes over for large ones (j = 1)
    u64 nd = 100000;
    double lg = std::log(2.0 + double(nd));
    CHECK(afe_cutoff(1, nd, cfg) == u64(4.0 * lg * lg * std::sqrt(double(nd))));
    CHECK(afe_cutoff(1, nd, cfg, 16.0) == u64(16.0 * lg * lg * std::sqrt(double(nd))));
}

TEST_CASE("central value: basic behavior at d = -3") {
    auto sv = shared_sieve(afe_cutoff(2, 9, AfeConfig{}) + 1);
    LValueEngine eng(sv);
    double l1 = eng.central_value(GaussInt{-3, 0}, 1);
    double l2 = eng.central_value(GaussInt{-3, 0}, 2);

    // golden value, frozen after verifying truncation stability and the
    // j=2 cross-check below
    CHECK(l1 == Approx(1.0983827543).margin(1e-6));
    CHECK(l2 == Approx(l1 * l1).margin(1e-6));

    // truncation stability: multiplier 4 vs 16
    double l1_16 = eng.central_value(GaussInt{-3, 0}, 1, 16.0);
    CHECK(std::abs(l1 - l1_16) < 1e-8);
}

TEST_CASE("AFE self-consistency L2 = L1^2 on sampled primes") {
    // j=1 and j=2 use different coefficient arrays (d_1 vs d_2) and different
    // weights (V_1 vs V_2), so agreement is a genuine cross-check
    u64 nd_max = 2000;
    auto sv = shared_sieve(afe_cutoff(2, nd_max, AfeConfig{}) + 1);
    LValueEngine eng(sv);
    std::vector<GaussInt> candidates;
    for (const auto& p : sv->primes) {
        if (u64(norm(p)) <= nd_max) candidates.push_back(p);
    }
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    for (int t = 0; t < 12; ++t) {
        const GaussInt& d = candidates[pick(rng)];
        double l1 = eng.central_value(d, 1);
        double l2 = eng.central_value(d, 2);
        INFO("d = " << to_string(d) << " norm " << to_double(norm(d)));
        REQUIRE(std::abs(l2 - l1 * l1) < 1e-6);
        REQUIRE(l2 > -1e-6);
    }
}

TEST_CASE("truncation stability at conductor norm near 10^6") {
    // doubling the cutoff moves the j=1 value by less than 1e-8
    AfeConfig afe;
    AfeConfig afe2;
    afe2.cutoff_multiplier *= 2.0;
    afe2.xi_floor_1 *= 2.0;
    u64 nd_target = 1000000;
    auto sv = shared_sieve(afe_cutoff(1, nd_target, afe2) + 1);
    LValueEngine eng(sv, afe);
    LValueEngine eng2(sv, afe2);
    // the largest prime under the target
    GaussInt d = kOne;
    for (const auto& p : sv->primes)
        if (u64(norm(p)) <= nd_target) d = p;
    REQUIRE(norm(d) > 900000);
    double a = eng.central_value(d, 1);
    double b = eng2.central_value(d, 1);
    CHECK(std::abs(a - b) < 1e-8);
}

TEST_CASE("central value input validation") {
    auto sv = shared_sieve(1000);
    LValueEngine eng(sv);
    CHECK_THROWS_AS(eng.central_value(GaussInt{3, 0}, 1), std::domain_error);   // not primary
    CHECK_THROWS_AS(eng.central_value(GaussInt{1, 1}, 1), std::domain_error);   // even
    CHECK_THROWS_AS(eng.central_value(GaussInt{-3, 0}, 3), std::domain_error);  // bad j
    // sieve too small for the cutoff
    CHECK_THROWS_AS(eng.central_value(GaussInt{-3, 0}, 2), std::domain_error);
}

TEST_CASE("cache round trip and validation") {
    std::string path = "/tmp/hecke_lvalue_cache_test.csv";
    std::remove(path.c_str());

    std::vector<CentralValueRecord> recs;
    CentralValueRecord a;
    a.prime = GaussInt{-3, 0};
    a.norm = 9;
    a.L1 = 0.944616244;
    a.L2 = a.L1 * a.L1;
    a.cutoff_multiplier = 4.0;
    recs.push_back(a);
    CentralValueRecord b;
    b.prime = GaussInt{-1, -2};
    b.norm = 5;
    b.L1 = 1.5;
    b.L2 = 2.25;
    b.cutoff_multiplier = 4.0;
    recs.push_back(b);

    append_lvalue_cache(path, recs);
    auto loaded = load_lvalue_cache(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].prime == a.prime);
    CHECK(loaded[0].L1 == Approx(a.L1).epsilon(1e-15));
    CHECK(loaded[1].norm == 5);

    SECTION("append extends") {
        append_lvalue_cache(path, {a});
        CHECK(load_lvalue_cache(path).size() == 3);
    }

    SECTION("version mismatch is an error") {
        std::ofstream out(path, std::ios::app);
        out << "-3,0,9,0.9,0.81,4,hecke-0.0.1\n";
        out.close();
        CHECK_THROWS_WITH(load_lvalue_cache(path), Catch::Contains("version mismatch"));
    }

    SECTION("inconsistent L2 is an error") {
        std::ofstream out(path, std::ios::app);
        out << "-3,0,9,0.9,7.5,4," << kCodeVersion << "\n";
        out.close();
        CHECK_THROWS_WITH(load_lvalue_cache(path), Catch::Contains("inconsistent"));
    }

    std::remove(path.c_str());
}

TEST_CASE("missing cache file reads as empty") {
    CHECK(load_lvalue_cache("/tmp/hecke_no_such_cache_file.csv").empty());
}
