#include "biset/catalog.hpp"
#include "biset/report.hpp"
#include "doctest.h"

using namespace biset;

TEST_CASE("group records round trip") {
  for (auto spec : {"1", "C2^3", "A4xC2", "M(2,2)"}) {
    auto g    = build_group(spec);
    auto j    = group_json(g);
    CHECK(!j.contains("table"));
    auto back = group_from_json(j);
    CHECK(same_group(*back, *g));
  }
  // a group that its name cannot rebuild carries its table
  auto a4   = build_group("A4");
  auto q    = quotient_group(*a4, Subgroup(12, p_elements(*a4, 2))).group;
  auto j    = group_json(q);
  CHECK(j.contains("table"));
  CHECK(same_group(*group_from_json(j), *q));
  j["table_hash"] = "0000000000000000";
  CHECK_THROWS_AS(group_from_json(j), PreconditionError);
}

TEST_CASE("certificate records round trip and re-verify") {
  auto r = generates(build_group("C2"), build_group("A4"), FieldSpec(0));
  REQUIRE(r.certificate);
  std::string const text = generates_json(r).dump();
  auto const        doc  = Json::parse(text);
  auto const        certs = certificates_in(doc);
  REQUIRE(certs.size() == 1);
  CHECK(certs[0].terms.size() == r.certificate->terms.size());
  CHECK(verify_certificate(certs[0]));
  CHECK(Json::parse(certificate_json(certs[0]).dump()) == doc.at("certificate"));

  auto bad = doc;
  bad["certificate"]["terms"][0]["u"] = std::vector<Element>{0, 1, 2, 3, 4};
  CHECK_THROWS_AS(certificates_in(bad), PreconditionError);
}

TEST_CASE("report field order is fixed") {
  auto r = generates(build_group("C3"), build_group("A4"), FieldSpec(2));
  auto j = generates_json(r);
  std::vector<std::string> keys;
  for (auto const& [k, v] : j.items()) {
    keys.push_back(k);
  }
  CHECK(keys == std::vector<std::string>{"h", "g", "field", "result", "method", "products_tried",
                                         "products_total", "rank_reached", "dimension", "note",
                                         "certificate"});
  auto nv = nv_json(is_nv(build_group("S3"), FieldSpec(0)));
  CHECK(nv.at("overall") == to_string(Verdict::False));
  CHECK(nv.at("entries")[0].at("report").at("method") == "quotient");
  CHECK(nv.at("entries").size() == 4);
}
