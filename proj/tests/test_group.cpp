#include <algorithm>
#include <numeric>
#include <set>

#include "biset/catalog.hpp"
#include "biset/group.hpp"
#include "biset/lattice.hpp"
#include "doctest.h"

using namespace biset;

namespace {
  // Brute-force subgroup count: closure of every subset, for tiny groups.
  std::size_t naive_subgroup_count(FiniteGroup const& g) {
    std::size_t n = g.order(), count = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      if (!(mask & 1)) {
        continue;
      }
      std::vector<Element> elts;
      for (Element x = 0; x < n; ++x) {
        if (mask >> x & 1) {
          elts.push_back(x);
        }
      }
      count += is_subgroup(g, elts);
    }
    return count;
  }

  std::size_t gaussian_binomial_sum_2(std::size_t n) {
    // number of subspaces of F_2^n
    std::size_t total = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      double num = 1, den = 1;
      for (std::size_t i = 0; i < k; ++i) {
        num *= static_cast<double>((1ULL << (n - i)) - 1);
        den *= static_cast<double>((1ULL << (i + 1)) - 1);
      }
      total += static_cast<std::size_t>(num / den + 0.5);
    }
    return total;
  }
}  // namespace

TEST_CASE("build_group examples") {
  auto c6 = build_group("C6");
  CHECK(c6->order() == 6);
  CHECK(c6->is_abelian());

  auto m = build_group("M(2,2)");
  CHECK(m->order() == 16);
  CHECK_FALSE(m->is_abelian());
  CHECK(m->exponent() == 4);
  CHECK(m->is_associative());

  auto x = build_group("X(27)");
  CHECK(x->order() == 27);
  CHECK(x->center().size() == 3);
  CHECK(x->exponent() == 3);
  CHECK(x->is_associative());

  CHECK_THROWS_AS(build_group(GroupSpec::modular(2, 1)), PreconditionError);
  CHECK_THROWS_AS(parse_group_spec("M(2,1)"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("X(8)"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("S5"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("Q8"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("C"), ParseError);
}

TEST_CASE("group spec round trip") {
  for (std::string text : {"1", "C2", "C2^3", "A4xC2", "D8", "S4", "A5", "X(27)", "M(3,2)",
                           "C2xC4xC3", "D8xC2^2"}) {
    CHECK(to_string(parse_group_spec(text)) == text);
  }
  CHECK(build_group("A4xC2")->order() == 24);
  CHECK_FALSE(build_group("A4xC2")->is_abelian());
}

TEST_CASE("catalog groups satisfy the group axioms") {
  for (auto const& spec : catalog_specs(64)) {
    auto g = build_group(spec);
    CAPTURE(to_string(spec));
    CHECK(g->is_associative());
    for (Element a = 0; a < g->order(); ++a) {
      CHECK(g->mul(0, a) == a);
      CHECK(g->mul(a, 0) == a);
      CHECK(g->mul(a, g->inv(a)) == 0);
      CHECK(g->mul(g->inv(a), a) == 0);
    }
  }
}

TEST_CASE("direct product encoding") {
  auto v = direct_product(cyclic_group(2), cyclic_group(2));
  CHECK(v->order_histogram()[2] == 3);
  auto big = direct_product(build_group("C2^3"), build_group("A4xC2"));
  CHECK(big->order() == 192);
  auto g = build_group("S3"), h = build_group("C4");
  auto p = direct_product(g, h);
  for (Element a = 0; a < 6; ++a) {
    for (Element b = 0; b < 4; ++b) {
      for (Element c = 0; c < 6; ++c) {
        for (Element d = 0; d < 4; ++d) {
          CHECK(p->mul(a * 4 + b, c * 4 + d) == g->mul(a, c) * 4 + h->mul(b, d));
        }
      }
    }
  }
  auto const saved = limits().max_product_order;
  limits().max_product_order = 100;
  CHECK_THROWS_AS(direct_product(build_group("C12"), build_group("C12")), BudgetExceeded);
  limits().max_product_order = saved;
}

TEST_CASE("subgroup counts") {
  CHECK(all_subgroups(build_group("C2^2")).size() == 5);
  CHECK(all_subgroups(build_group("1")).size() == 1);
  CHECK(all_subgroups(build_group("C2^6")).size() == 2825);
  CHECK(gaussian_binomial_sum_2(6) == 2825);
  for (std::string text : {"C2^2", "S3", "C6", "D8", "C2xC4", "A4"}) {
    auto g = build_group(text);
    CAPTURE(text);
    if (g->order() <= 16) {
      CHECK(all_subgroups(g).size() == naive_subgroup_count(*g));
    }
  }
  CHECK(all_subgroups(build_group("A4")).size() == 10);
  CHECK(all_subgroups(build_group("S4")).size() == 30);
}

TEST_CASE("subgroup enumeration budget") {
  auto const saved = limits().max_subgroups;
  limits().max_subgroups = 10;
  try {
    compute_subgroup_lattice(build_group("C2^4"));
    FAIL("expected a budget error");
  } catch (BudgetExceeded const& e) {
    CHECK(e.progress() > 10);
  }
  limits().max_subgroups = saved;
}

TEST_CASE("conjugacy classes") {
  auto a4  = build_group("A4");
  auto cls = subgroup_conjugacy_classes(a4);
  CHECK(cls.size() == 5);
  auto lat = subgroup_lattice(a4);
  std::vector<std::size_t> orders;
  for (std::size_t c = 0; c < lat->classes.size(); ++c) {
    orders.push_back(lat->representative(c).size());
  }
  CHECK(orders == std::vector<std::size_t>{1, 2, 3, 4, 12});
  CHECK(subgroup_conjugacy_classes(build_group("S4")).size() == 11);
  CHECK(subgroup_conjugacy_classes(build_group("C2xC4")).size()
        == all_subgroups(build_group("C2xC4")).size());
}

TEST_CASE("class invariants over the catalog") {
  for (auto const& spec : catalog_specs(24)) {
    auto g   = build_group(spec);
    auto lat = subgroup_lattice(g);
    CAPTURE(to_string(spec));
    std::size_t total = 0;
    for (std::size_t c = 0; c < lat->classes.size(); ++c) {
      auto const& cls = lat->classes[c];
      total += cls.size();
      CHECK(g->order() % cls.size() == 0);
      Subgroup const& rep = lat->representative(c);
      CHECK(rep == canonical_conjugate(*g, rep));
      for (std::size_t m : cls.members) {
        CHECK_FALSE(lat->subgroups[m] < rep);
      }
    }
    CHECK(total == lat->subgroups.size());
    for (Subgroup const& s : lat->subgroups) {
      CHECK(g->order() % s.size() == 0);
      CHECK(s.contains(0));
      CHECK(is_subgroup(*g, s.elements()));
    }
  }
}

TEST_CASE("quotients") {
  auto a4 = build_group("A4");
  auto v4 = normal_subgroups(a4);
  Subgroup klein;
  for (auto const& n : v4) {
    if (n.size() == 4) {
      klein = n;
    }
  }
  REQUIRE(klein.size() == 4);
  Quotient q = quotient_group(*a4, klein);
  CHECK(q.group->order() == 3);
  CHECK(is_cyclic(*q.group));

  auto c4   = build_group("C4");
  auto half = generated_subgroup(*c4, {2});
  CHECK(is_isomorphic(*quotient_group(*c4, half).group, *build_group("C2")));
  auto s3 = build_group("S3");
  CHECK(is_isomorphic(*quotient_group(*s3, trivial_subgroup(*s3)).group, *s3));

  // projection is a homomorphism with kernel N
  for (auto const& spec : catalog_specs(16)) {
    auto g = build_group(spec);
    for (Subgroup const& n : normal_subgroups(g)) {
      Quotient qq = quotient_group(*g, n);
      CHECK(qq.group->order() * n.size() == g->order());
      for (Element a = 0; a < g->order(); ++a) {
        CHECK((qq.projection[a] == 0) == n.contains(a));
        for (Element b = 0; b < g->order(); ++b) {
          CHECK(qq.projection[g->mul(a, b)] == qq.group->mul(qq.projection[a], qq.projection[b]));
        }
      }
    }
  }
  auto sub = generated_subgroup(*s3, {3});
  if (!is_normal(*s3, sub)) {
    CHECK_THROWS_AS(quotient_group(*s3, sub), PreconditionError);
  }
}

TEST_CASE("isomorphism") {
  CHECK(is_isomorphic(*build_group("C6"), *build_group("C2xC3")));
  CHECK_FALSE(is_isomorphic(*build_group("D8"), *build_group("M(2,2)")));
  CHECK_FALSE(is_isomorphic(*build_group("D8"), *build_group("C2xC4")));
  CHECK(is_isomorphic(*build_group("S3"), *build_group("D6")));
  CHECK(is_isomorphic(*build_group("D12"), *build_group("S3xC2")));
  auto specs = catalog_specs(16);
  for (auto const& a : specs) {
    auto g  = build_group(a);
    auto id = is_isomorphic(*g, *g);
    REQUIRE(id);
    CHECK(is_isomorphism(*g, *g, *id));
    for (auto const& b : specs) {
      auto h = build_group(b);
      if (h->order() != g->order()) {
        continue;
      }
      auto f = is_isomorphic(*g, *h);
      auto r = is_isomorphic(*h, *g);
      CHECK(f.has_value() == r.has_value());
      if (f) {
        CHECK(is_isomorphism(*g, *h, *f));
        CHECK(g->order_histogram() == h->order_histogram());
      }
    }
  }
}

TEST_CASE("automorphisms") {
  auto v = automorphisms(*build_group("C2^2"));
  CHECK(v.automorphisms.size() == 6);
  CHECK(v.out_order == 6);
  CHECK(automorphisms(*build_group("C9")).out_order == 6);
  CHECK(automorphisms(*build_group("C2")).out_order == 1);
  CHECK(automorphisms(*build_group("S3")).out_order == 1);
  CHECK(automorphisms(*build_group("D8")).out_order == 2);
  CHECK(automorphisms(*build_group("C2^3")).out_order == 168);
  for (auto const& spec : catalog_specs(16)) {
    auto g = build_group(spec);
    auto a = automorphisms(*g);
    CHECK(a.automorphisms.size() == a.inner_count * a.out_order);
    if (g->is_abelian()) {
      CHECK(a.inner_count == 1);
    }
  }
}

TEST_CASE("section classes") {
  auto count_c2 = [](GroupPtr const& g) {
    auto        c2 = build_group("C2");
    std::size_t n  = 0;
    for (auto const& sc : section_classes(g)) {
      auto q = section_quotient(*g, sc.representative);
      n += q->order() == 2;
    }
    return n;
  };
  CHECK(count_c2(build_group("C2^3")) == 35);
  CHECK(count_c2(build_group("A4xC2")) == 15);

  for (std::string text : {"S3", "D8", "A4"}) {
    auto g = build_group(text);
    std::size_t whole = 0;
    for (auto const& sc : section_classes(g)) {
      if (sc.representative.top.size() == g->order() && sc.representative.bottom.size() == 1) {
        ++whole;
        CHECK(sc.size == 1);
      }
      auto q = section_quotient(*g, sc.representative);
      if (q->order() == g->order()) {
        CHECK(sc.representative.top.size() == g->order());
      }
    }
    CHECK(whole == 1);
  }
}

TEST_CASE("section class sizes add up") {
  // total number of sections by a direct double loop
  for (std::string text : {"S3", "D8", "A4", "C2^3", "S4"}) {
    auto        g   = build_group(text);
    auto        lat = subgroup_lattice(g);
    std::size_t direct = 0;
    for (auto const& t : lat->subgroups) {
      for (auto const& s : lat->subgroups) {
        direct += s.subset_of(t) && is_normal(*g, s, t);
      }
    }
    std::size_t via_classes = 0;
    for (auto const& sc : section_classes(g)) {
      via_classes += sc.size;
    }
    CAPTURE(text);
    CHECK(direct == via_classes);
  }
}

TEST_CASE("subquotients up to isomorphism") {
  auto                  types = subquotients_up_to_iso(build_group("A4xC2"));
  std::set<std::string> names;
  for (auto const& t : types) {
    names.insert(describe_group(*t.group));
  }
  CHECK(names == std::set<std::string>{"1", "C2", "C3", "C2^2", "C6", "C2^3", "A4", "A4xC2"});
  auto c5 = subquotients_up_to_iso(build_group("C5"));
  CHECK(c5.size() == 2);
  std::set<std::string> s4;
  for (auto const& t : subquotients_up_to_iso(build_group("S4"))) {
    s4.insert(describe_group(*t.group));
  }
  CHECK(s4.contains("D8"));
  CHECK(s4.contains("S3"));
  CHECK_FALSE(is_subquotient(build_group("C4"), build_group("A4")));
  CHECK(is_subquotient(build_group("C3"), build_group("A4")));
}

TEST_CASE("double cosets") {
  auto c2 = build_group("C2");
  CHECK(double_coset_reps(*c2, trivial_subgroup(*c2), trivial_subgroup(*c2)).size() == 2);
  auto s3 = build_group("S3");
  CHECK(double_coset_reps(*s3, whole_group(*s3), whole_group(*s3)).size() == 1);
  auto a4  = build_group("A4");
  auto lat = subgroup_lattice(a4);
  Subgroup v4, c3;
  for (auto const& s : lat->subgroups) {
    if (s.size() == 4) {
      v4 = s;
    }
    if (s.size() == 3 && c3.size() == 0) {
      c3 = s;
    }
  }
  CHECK(double_coset_reps(*a4, v4, c3).size() == 1);

  // partition property
  for (auto const& a : lat->subgroups) {
    for (auto const& b : lat->subgroups) {
      auto        reps  = double_coset_reps(*a4, a, b);
      std::size_t total = 0;
      std::set<Element> covered;
      for (Element r : reps) {
        std::set<Element> dc;
        for (Element x : a.elements()) {
          for (Element y : b.elements()) {
            dc.insert(a4->mul(a4->mul(x, r), y));
          }
        }
        total += dc.size();
        covered.insert(dc.begin(), dc.end());
      }
      CHECK(total == a4->order());
      CHECK(covered.size() == a4->order());
    }
  }
}

TEST_CASE("describe_group") {
  CHECK(describe_group(*build_group("C2xC2xC2")) == "C2^3");
  CHECK(describe_group(*build_group("C2xC3")) == "C6");
  CHECK(describe_group(*build_group("C4xC2")) == "C2xC4");
  CHECK(describe_group(*build_group("D6")) == "S3");
  CHECK(describe_group(*build_group("C2xA4")) == "A4xC2");
  CHECK(abelian_invariants(*build_group("C6xC4")) == std::vector<std::size_t>{2, 12});
}

TEST_CASE("structural predicates") {
  CHECK(is_nilpotent(*build_group("D8")));
  CHECK_FALSE(is_nilpotent(*build_group("S3")));
  std::size_t p = 0;
  CHECK(is_p_group(*build_group("X(27)"), &p));
  CHECK(p == 3);
  CHECK(euler_phi(9) == 6);
  CHECK(euler_phi(12) == 4);
  CHECK(is_cyclic(*build_group("C2xC3")));
  CHECK_FALSE(is_cyclic(*build_group("C2^2")));
}
