#include "biset/report.hpp"

#include "biset/cache.hpp"
#include "biset/catalog.hpp"

namespace biset {

  Json group_json(GroupPtr const& g) {
    Json j;
    j["name"]       = g->name();
    j["order"]      = g->order();
    j["table_hash"] = hash_hex(g->content_hash());
    bool rebuildable = false;
    try {
      rebuildable = same_group(*build_group(g->name()), *g);
    } catch (std::exception const&) {
    }
    if (!rebuildable) {
      j["table"] = g->table();
    }
    return j;
  }

  GroupPtr group_from_json(Json const& j) {
    std::string const name = j.at("name").get<std::string>();
    GroupPtr          g;
    if (j.contains("table")) {
      g = std::make_shared<FiniteGroup const>(name, j.at("order").get<std::size_t>(),
                                              j.at("table").get<std::vector<Element>>());
    } else {
      g = build_group(name);
    }
    if (hash_hex(g->content_hash()) != j.at("table_hash").get<std::string>()) {
      throw PreconditionError("group '" + name + "' does not match the recorded table hash");
    }
    return g;
  }

  Json field_json(FieldSpec f) {
    return Json{{"name", f.name()}, {"characteristic", f.characteristic()}};
  }

  Json subgroup_json(Subgroup const& s) {
    return s.elements();
  }

  Json certificate_json(GeneratesCertificate const& cert) {
    Json j;
    j["h"]     = group_json(cert.h);
    j["g"]     = group_json(cert.g);
    j["field"] = field_json(cert.field);
    Json terms = Json::array();
    for (auto const& t : cert.terms) {
      terms.push_back(Json{{"u", subgroup_json(t.u)},
                           {"w", subgroup_json(t.w)},
                           {"coeff", t.coeff.to_string()}});
    }
    j["terms"] = std::move(terms);
    return j;
  }

  GeneratesCertificate certificate_from_json(Json const& j) {
    GeneratesCertificate cert;
    cert.h               = group_from_json(j.at("h"));
    cert.g               = group_from_json(j.at("g"));
    cert.field           = FieldSpec(j.at("field").at("characteristic").get<std::uint64_t>());
    std::size_t const nn = cert.h->order() * cert.g->order();
    for (Json const& t : j.at("terms")) {
      auto u = t.at("u").get<std::vector<Element>>();
      auto w = t.at("w").get<std::vector<Element>>();
      for (Element e : u) {
        if (e >= nn) {
          throw PreconditionError("certificate element out of range");
        }
      }
      for (Element e : w) {
        if (e >= nn) {
          throw PreconditionError("certificate element out of range");
        }
      }
      Subgroup su(nn, u), sw(nn, w);
      if (!is_subgroup(*direct_product(cert.h, cert.g), su.elements())
          || !is_subgroup(*direct_product(cert.g, cert.h), sw.elements())) {
        throw PreconditionError("certificate term is not a subgroup");
      }
      cert.terms.push_back(
          {std::move(su), std::move(sw), Scalar::parse(cert.field, t.at("coeff").get<std::string>())});
    }
    return cert;
  }

  Json generates_json(GeneratesReport const& r) {
    Json j;
    j["h"]              = group_json(r.h);
    j["g"]              = group_json(r.g);
    j["field"]          = field_json(r.field);
    j["result"]         = to_string(r.result);
    j["method"]         = r.method;
    j["products_tried"] = r.products_tried;
    j["products_total"] = r.products_total;
    j["rank_reached"]   = r.rank_reached;
    j["dimension"]      = r.dimension;
    j["note"]           = r.note;
    j["certificate"]    = r.certificate ? certificate_json(*r.certificate) : Json(nullptr);
    return j;
  }

  Json section_json(FiniteGroup const& g, Section const& s) {
    Json j;
    j["top"]      = subgroup_json(s.top);
    j["bottom"]   = subgroup_json(s.bottom);
    j["quotient"] = describe_group(*section_quotient(g, s));
    return j;
  }

  Json nv_json(NvReport const& r) {
    Json j;
    j["g"]       = group_json(r.g);
    j["field"]   = field_json(r.field);
    j["overall"] = to_string(r.overall);
    Json entries = Json::array();
    for (NvEntry const& e : r.entries) {
      Json x;
      x["h"]       = describe_group(*e.h);
      x["order"]   = e.h->order();
      x["witness"] = section_json(*r.g, e.witness);
      x["via"]     = e.via;
      x["report"]  = generates_json(e.report);
      entries.push_back(std::move(x));
    }
    j["entries"] = std::move(entries);
    return j;
  }

  namespace {
    void collect(Json const& j, std::vector<GeneratesCertificate>& out) {
      if (j.is_object()) {
        if (j.contains("terms") && j.contains("h") && j.contains("field")) {
          out.push_back(certificate_from_json(j));
          return;
        }
        for (auto const& [key, value] : j.items()) {
          collect(value, out);
        }
      } else if (j.is_array()) {
        for (auto const& value : j) {
          collect(value, out);
        }
      }
    }
  }  // namespace

  std::vector<GeneratesCertificate> certificates_in(Json const& report) {
    std::vector<GeneratesCertificate> out;
    collect(report, out);
    return out;
  }

}  // namespace biset
