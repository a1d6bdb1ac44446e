#include <random>

#include "biset/biset.hpp"
#include "biset/catalog.hpp"
#include "doctest.h"

using namespace biset;

namespace {
  FieldSpec const Q;

  BisetElement from_counts(SpacePtr const& s, LabelCounts const& c, FieldSpec f = Q) {
    BisetElement e(s, f);
    for (auto [label, n] : c) {
      e.add(label, Scalar(f, static_cast<long long>(n)));
    }
    return e;
  }

  std::size_t find_label(SpacePtr const& s, std::vector<std::pair<Element, Element>> const& pairs) {
    std::vector<Element> elts;
    for (auto [a, b] : pairs) {
      elts.push_back(s->pair(a, b));
    }
    return s->index_of(Subgroup(s->product()->order(), elts));
  }
}  // namespace

TEST_CASE("canonical basis sizes") {
  auto c2 = build_group("C2");
  CHECK(biset_space(c2, c2)->size() == 5);
  CHECK(biset_space(build_group("1"), build_group("1"))->size() == 1);
  auto c23 = build_group("C2^3");
  CHECK(canonical_basis(c23, c23, Q)->size() == 2825);
}

TEST_CASE("product invariants") {
  auto s3 = build_group("S3");
  auto sp = biset_space(s3, s3);
  auto id = sp->identity_index();
  auto pi = product_invariants(*s3, *s3, sp->label(id));
  CHECK(pi.p1.size() == 6);
  CHECK(pi.k1.size() == 1);
  CHECK(pi.k2.size() == 1);
  CHECK(is_isomorphic(*pi.q, *s3));
  auto c2 = build_group("C2"), c3 = build_group("C3");
  auto full = whole_group(*direct_product(c2, c3));
  auto fi   = product_invariants(*c2, *c3, full);
  CHECK(fi.p1.size() == 2);
  CHECK(fi.k2.size() == 3);
  CHECK(fi.q->order() == 1);
  for (auto const& spec : {"C2", "S3", "C4"}) {
    for (auto const& spec2 : {"C2", "S3", "C2^2"}) {
      auto g = build_group(spec), h = build_group(spec2);
      auto s = biset_space(g, h);
      for (std::size_t i = 0; i < s->size(); ++i) {
        auto const& z = s->sizes(i);
        CHECK(z[1] * z[4] == z[2] * z[3]);  // |p1|/|k1| = |p2|/|k2|
        CHECK(g->order() % z[5] == 0);
        CHECK(h->order() % z[5] == 0);
        auto inv = product_invariants(*g, *h, s->label(i));
        CHECK(inv.q->order() == z[5]);
        CHECK(is_normal(*g, inv.k1, inv.p1));
        CHECK(is_normal(*h, inv.k2, inv.p2));
      }
    }
  }
}

TEST_CASE("star product") {
  auto g  = build_group("S3");
  auto gg = biset_space(g, g);
  auto d  = gg->label(gg->identity_index());
  for (std::size_t i = 0; i < gg->size(); ++i) {
    CHECK(star(*g, *g, *g, d, gg->label(i)) == gg->label(i));
    CHECK(star(*g, *g, *g, gg->label(i), d) == gg->label(i));
  }
  auto c2   = build_group("C2");
  auto full = whole_group(*direct_product(c2, c2));
  CHECK(star(*c2, *c2, *c2, full, full) == full);
}

TEST_CASE("mackey examples") {
  auto c2 = build_group("C2"), one = build_group("1");
  auto s21 = biset_space(c2, one);
  auto s12 = biset_space(one, c2);
  // Ind_1^{C2} is (C2 x 1)/1, Res^{C2}_1 is (1 x C2)/1
  std::size_t ind = find_label(s21, {{0, 0}});
  std::size_t res = find_label(s12, {{0, 0}});
  auto rc = mackey_compose(s12, res, s21, ind);
  REQUIRE(rc.size() == 1);
  CHECK(rc[0].second == 2);
  auto cr = mackey_compose(s21, ind, s12, res);
  REQUIRE(cr.size() == 1);
  CHECK(cr[0].second == 1);
  CHECK(biset_space(c2, c2)->label(cr[0].first).size() == 1);

  auto oracle = realize_and_compose_oracle(s12, res, s21, ind, biset_space(one, one));
  CHECK(oracle == rc);
}

TEST_CASE("compose with scalars") {
  auto g = build_group("C3");
  auto i = identity_element(g, Q);
  auto x = compose(i * Scalar(Q, 2), i * Scalar(Q, 3));
  CHECK(x == i * Scalar(Q, 6));
  FieldSpec f2(2);
  auto      i2 = identity_element(g, f2);
  auto      s  = biset_space(g, g);
  auto      y  = BisetElement::basis(s, f2, 0);
  CHECK(compose(i2 * Scalar(f2, 2), y).is_zero());
  CHECK(compose(y, BisetElement(s, f2)).is_zero());
  CHECK_THROWS_AS(compose(i, i2), PreconditionError);
}

TEST_CASE("identity and associativity") {
  std::vector<std::string> names = {"1", "C2", "C3", "C4", "C2^2", "S3", "D8"};
  for (auto const& a : names) {
    for (auto const& b : names) {
      auto g = build_group(a), h = build_group(b);
      auto s = biset_space(g, h);
      if (g->order() * h->order() > 32) {
        continue;
      }
      auto ig = identity_element(g, Q), ih = identity_element(h, Q);
      for (std::size_t i = 0; i < s->size(); ++i) {
        auto x = BisetElement::basis(s, Q, i);
        CHECK(compose(ig, x) == x);
        CHECK(compose(x, ih) == x);
      }
    }
  }
  std::mt19937_64 rng(1);
  std::vector<GroupPtr> groups;
  for (auto const& n : {"C2", "C3", "C4", "C2^2", "S3", "D8", "C6"}) {
    groups.push_back(build_group(n));
  }
  for (int trial = 0; trial < 300; ++trial) {
    auto g = groups[rng() % groups.size()], h = groups[rng() % groups.size()],
         k = groups[rng() % groups.size()], l = groups[rng() % groups.size()];
    auto sgh = biset_space(g, h), shk = biset_space(h, k), skl = biset_space(k, l);
    auto x = BisetElement::basis(sgh, Q, rng() % sgh->size());
    auto y = BisetElement::basis(shk, Q, rng() % shk->size());
    auto z = BisetElement::basis(skl, Q, rng() % skl->size());
    CHECK(compose(compose(x, y), z) == compose(x, compose(y, z)));
  }
}

TEST_CASE("oracle agrees with the Mackey formula") {
  std::vector<GroupPtr> groups;
  for (auto const& n : {"1", "C2", "C3", "C2^2", "S3"}) {
    groups.push_back(build_group(n));
  }
  for (auto const& g : groups) {
    for (auto const& h : groups) {
      for (auto const& k : groups) {
        auto     gh = biset_space(g, h), hk = biset_space(h, k), gk = biset_space(g, k);
        Composer c(gh, hk, gk);
        for (std::size_t i = 0; i < gh->size(); ++i) {
          for (std::size_t j = 0; j < hk->size(); ++j) {
            CHECK(c.compose(i, j) == realize_and_compose_oracle(gh, i, hk, j, gk));
          }
        }
      }
    }
  }
}

TEST_CASE("elementary bisets") {
  auto g  = build_group("S3");
  auto e  = subgroup_as_group(*g, generated_subgroup(*g, {g->generators()[0]}));
  auto in = induction(g, e);
  CHECK(in.space->sizes(in.label)[0] == e.group->order());
  CHECK(is_left_free(*in.space, in.label));
  auto n = normal_subgroups(g)[1];
  auto q = quotient_group(*g, n);
  auto inf = inflation(g, q);
  CHECK(inf.space->sizes(inf.label)[3] == n.size());
  CHECK_FALSE(is_left_free(*inf.space, inf.label));
  auto def = deflation(g, q);
  // Def o Inf = id on G/N
  CHECK(compose(def.element(Q), inf.element(Q)) == identity_element(q.group, Q));
  auto full = biset_space(g, g);
  CHECK_FALSE(is_left_free(*full, full->size() - 1));
  CHECK(is_left_free(*full, full->identity_index()));
}

TEST_CASE("butterfly reproduces labels") {
  std::vector<GroupPtr> groups;
  for (auto const& n : {"C2", "C4", "S3"}) {
    groups.push_back(build_group(n));
  }
  for (auto const& g : groups) {
    for (auto const& h : groups) {
      auto s = biset_space(g, h);
      for (std::size_t i = 0; i < s->size(); ++i) {
        auto factors = butterfly_factorize(s, i);
        CHECK(compose_factors(factors, Q) == BisetElement::basis(s, Q, i));
      }
    }
  }
  auto g  = build_group("S3");
  auto s  = biset_space(g, g);
  auto bf = butterfly_factorize(s, s->identity_index());
  CHECK(bf[0].space->left()->order() == 6);
  CHECK(bf[0].space->right()->order() == 6);
}

TEST_CASE("trace map") {
  auto c2 = build_group("C2");
  CHECK(trace_map(identity_element(c2, Q)) == Scalar(Q, 2));
  CHECK(trace_map(identity_element(build_group("S3"), Q)) == Scalar(Q, 3));
  CHECK(trace_map(identity_element(build_group("1"), Q)) == Scalar(Q, 1));
  CHECK(trace_map(BisetElement(biset_space(c2, c2), Q)) == Scalar(Q, 0));
  for (auto const& a : {"C2", "C3", "S3"}) {
    for (auto const& b : {"C2", "C2^2", "S3"}) {
      auto g = build_group(a), h = build_group(b);
      auto gh = biset_space(g, h), hg = biset_space(h, g);
      for (std::size_t i = 0; i < gh->size(); ++i) {
        for (std::size_t j = 0; j < hg->size(); ++j) {
          auto u = BisetElement::basis(gh, Q, i), v = BisetElement::basis(hg, Q, j);
          CHECK(trace_map(compose(u, v)) == trace_map(compose(v, u)));
        }
      }
    }
  }
}
