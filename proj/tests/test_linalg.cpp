#include <random>

#include "biset/linalg.hpp"
#include "biset/span.hpp"
#include "doctest.h"

using namespace biset;

namespace {
  ModularSpan::Vector mv(std::initializer_list<std::pair<std::uint32_t, std::uint64_t>> l) {
    return ModularSpan::Vector(l);
  }
  RationalSpan::Vector qv(std::vector<std::pair<std::uint32_t, long>> const& l) {
    RationalSpan::Vector v;
    for (auto [c, x] : l) {
      v.emplace_back(c, mpz_class(x));
    }
    return v;
  }

  IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    IntMatrix                          m(r, std::vector<long long>(c));
    for (auto& row : m) {
      for (auto& x : row) {
        x = d(rng);
      }
    }
    return m;
  }
}  // namespace

TEST_CASE("span_add basics") {
  ModularSpan s(3, PrimeField{7});
  CHECK_FALSE(s.add({}));
  CHECK(s.add(mv({{0, 1}})));
  CHECK(s.add(mv({{0, 1}, {1, 1}})));
  CHECK(s.rank() == 2);
  CHECK_FALSE(s.add(mv({{0, 3}, {1, 2}})));
  CHECK(s.add(mv({{2, 5}})));
  CHECK_FALSE(s.add(mv({{0, 1}, {1, 1}, {2, 1}})));
  CHECK(s.rank() == 3);
  CHECK_THROWS_AS(s.add(mv({{3, 1}})), PreconditionError);

  RationalSpan q(2);
  CHECK(q.add(qv({{0, 2}, {1, 4}})));
  CHECK_FALSE(q.add(qv({{0, -3}, {1, -6}})));
  CHECK(q.add(qv({{1, 1}})));
  CHECK_FALSE(q.add(qv({{0, 5}, {1, 7}})));
}

TEST_CASE("contains and certificate") {
  RationalSpan q(3, {}, true);
  q.add(qv({{0, 1}}), 10);
  q.add(qv({{1, 1}}), 20);
  CHECK(q.contains(qv({{0, 1}, {1, 1}})));
  auto cert = q.certificate(qv({{0, 1}, {1, 1}}));
  REQUIRE(cert.size() == 2);
  CHECK(cert[0] == std::pair<std::uint64_t, mpq_class>{10, 1});
  CHECK(cert[1] == std::pair<std::uint64_t, mpq_class>{20, 1});
  CHECK_FALSE(q.contains(qv({{2, 1}})));
  CHECK_THROWS_AS(q.certificate(qv({{2, 1}})), PreconditionError);

  ModularSpan full(2, PrimeField{5});
  full.add(mv({{0, 2}, {1, 3}}));
  full.add(mv({{0, 1}, {1, 1}}));
  CHECK(full.contains(mv({{0, 4}, {1, 1}})));
}

TEST_CASE("certificate soundness on random data") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t const dim = 6 + trial % 5;
    auto              m   = random_matrix(rng, dim - 1, dim, 3);
    for (bool track : {false, true}) {
      RationalSpan q(dim, {}, track);
      ModularSpan  f(dim, PrimeField{101}, track);
      for (std::size_t i = 0; i < m.size(); ++i) {
        q.add(sparse_row(m[i]), i);
        ModularSpan::Vector r;
        for (std::size_t j = 0; j < dim; ++j) {
          r.emplace_back(j, PrimeField{101}.reduce(m[i][j]));
        }
        f.add(r, i);
      }
      // a random combination of the rows
      std::vector<long long> target(dim, 0);
      std::uniform_int_distribution<int> d(-4, 4);
      for (auto const& row : m) {
        int c = d(rng);
        for (std::size_t j = 0; j < dim; ++j) {
          target[j] += c * row[j];
        }
      }
      auto cert = q.certificate(sparse_row(target));
      std::vector<mpq_class> sum(dim, 0);
      for (auto const& [tag, c] : cert) {
        for (std::size_t j = 0; j < dim; ++j) {
          sum[j] += c * static_cast<long>(m[tag][j]);
        }
      }
      for (std::size_t j = 0; j < dim; ++j) {
        CHECK(sum[j] == static_cast<long>(target[j]));
      }
      ModularSpan::Vector t;
      for (std::size_t j = 0; j < dim; ++j) {
        t.emplace_back(j, PrimeField{101}.reduce(target[j]));
      }
      auto fc = f.certificate(t);
      PrimeField pf{101};
      std::vector<std::uint64_t> fs(dim, 0);
      for (auto const& [tag, c] : fc) {
        for (std::size_t j = 0; j < dim; ++j) {
          fs[j] = pf.add(fs[j], pf.mul(c, pf.reduce(m[tag][j])));
        }
      }
      for (std::size_t j = 0; j < dim; ++j) {
        CHECK(fs[j] == pf.reduce(target[j]));
      }
    }
  }
}

TEST_CASE("rank and null space") {
  FieldSpec q;
  CHECK(rank(Matrix::identity(q, 4)) == 4);
  Matrix zero(q, 3, 5);
  CHECK(rank(zero) == 0);
  CHECK(null_space(zero).size() == 5);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t r = 3 + trial % 4, c = 4 + trial % 3;
    auto        m = random_matrix(rng, r, c, 2);
    // force a dependency now and then
    if (trial % 2 == 0) {
      for (std::size_t j = 0; j < c; ++j) {
        m[r - 1][j] = m[0][j] + 2 * m[1][j];
      }
    }
    for (std::uint64_t p : {0ULL, 2ULL, 3ULL, 1000003ULL}) {
      FieldSpec f(p);
      Matrix    mm(f, r, c);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
          mm.at(i, j) = Scalar(f, m[i][j]);
        }
      }
      std::size_t rk   = rank(mm);
      auto        null = null_space(mm);
      CHECK(rk + null.size() == c);
      for (auto const& x : null) {
        for (auto const& y : mm.apply(x)) {
          CHECK(y.is_zero());
        }
      }
      if (p != 0) {
        CHECK(rk == rank_mod_p(m, p));
        CHECK(rk <= rank_rational(m));
      } else {
        CHECK(rk == rank_rational(m));
      }
    }
    CHECK(rank_rational(m) + null_space_rational(m).size() == c);
  }
}

TEST_CASE("rank over Q agrees with some large prime") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto m  = random_matrix(rng, 6, 6, 5);
    auto rq = rank_rational(m);
    bool agree = false;
    for (std::uint64_t p : {1000000007ULL, 998244353ULL, 2147483629ULL}) {
      agree = agree || rank_mod_p(m, p) == rq;
    }
    CHECK(agree);
  }
}

TEST_CASE("exact arithmetic") {
  std::mt19937_64 rng(5);
  FieldSpec       q;
  for (int i = 0; i < 50; ++i) {
    long a = static_cast<long>(rng() % 1000) + 1, b = static_cast<long>(rng() % 1000) + 1;
    Scalar x(q, mpq_class(a, b)), y(q, mpq_class(b, a));
    CHECK(x * y == Scalar(q, 1));
    CHECK(Scalar::parse(q, x.to_string()) == x);
  }
  for (std::uint64_t p : {2ULL, 3ULL, 7ULL, 101ULL}) {
    PrimeField f{p};
    for (std::uint64_t x = 0; x < std::min<std::uint64_t>(p, 50); ++x) {
      CHECK(f.pow(x, p) == x);
    }
    FieldSpec fs(p);
    CHECK((Scalar(fs, static_cast<long long>(p)) ).is_zero());
  }
  CHECK_THROWS_AS(FieldSpec(4), PreconditionError);
  CHECK_THROWS(Scalar(q, 1) / Scalar(q, 0));
  CHECK(Scalar(FieldSpec(5), mpq_class(1, 2)).residue() == 3);
}
