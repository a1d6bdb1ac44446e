// Command-line front end.  Exit codes: 0 affirmative or success, 1 negative,
// 2 inconclusive (budget), 3 usage, 4 group-spec parse error, 5 precondition.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "biset/catalog.hpp"
#include "biset/functor.hpp"
#include "biset/report.hpp"

using namespace biset;

namespace {

  enum Exit { kTrue = 0, kFalse = 1, kInconclusive = 2, kUsage = 3, kParse = 4, kPrecondition = 5 };

  struct Config {
    std::uint64_t characteristic = 0;
    std::string   format         = "text";
    std::string   cache_dir;
    unsigned      threads = 1;
    std::string   budget  = "10m";
    std::uint64_t seed    = 0;
  };

  struct Outcome {
    Json        result;
    int         code = kTrue;
    std::string text;
  };

  Budget make_budget(std::string const& text) {
    if (text == "none" || text == "0") {
      return Budget();
    }
    return Budget(parse_duration(text));
  }

  int verdict_code(Verdict v) {
    return v == Verdict::True ? kTrue : v == Verdict::False ? kFalse : kInconclusive;
  }

  std::string label_line(BisetSpace const& s, std::size_t i) {
    auto const&        z = s.sizes(i);
    std::ostringstream os;
    os << "  [" << i << "] |L|=" << z[0] << " p1=" << z[1] << " k1=" << z[3] << " p2=" << z[2]
       << " k2=" << z[4] << " |q|=" << z[5];
    return os.str();
  }

  Outcome cmd_basis(std::string const& a, std::string const& b, Config const& cfg) {
    auto g = build_group(a), h = build_group(b);
    auto s = canonical_basis(g, h, FieldSpec(cfg.characteristic), make_budget(cfg.budget));
    Outcome out;
    out.result["left"]  = g->name();
    out.result["right"] = h->name();
    out.result["count"] = s->size();
    Json               labels = Json::array();
    std::ostringstream os;
    os << "B(" << g->name() << ", " << h->name() << "): " << s->size() << " labels\n";
    for (std::size_t i = 0; i < s->size(); ++i) {
      auto const& z = s->sizes(i);
      auto const  pi = product_invariants(*g, *h, s->label(i));
      Json        l;
      l["index"]    = i;
      l["order"]    = z[0];
      l["p1"]       = z[1];
      l["k1"]       = z[3];
      l["p2"]       = z[2];
      l["k2"]       = z[4];
      l["q"]        = describe_group(*pi.q);
      l["elements"] = subgroup_json(s->label(i));
      labels.push_back(std::move(l));
      os << label_line(*s, i) << " q=" << describe_group(*pi.q) << "\n";
    }
    out.result["labels"] = std::move(labels);
    out.text             = os.str();
    return out;
  }

  Outcome cmd_compose(std::vector<std::string> const& specs, std::size_t i, std::size_t j,
                      Config const& cfg) {
    auto g = build_group(specs[0]), h = build_group(specs[1]), k = build_group(specs[2]);
    auto budget = make_budget(cfg.budget);
    auto gh = biset_space(g, h, budget), hk = biset_space(h, k, budget);
    if (i >= gh->size() || j >= hk->size()) {
      throw PreconditionError("label index out of range");
    }
    auto const counts = mackey_compose(gh, i, hk, j);
    Outcome    out;
    out.result["left"]  = i;
    out.result["right"] = j;
    Json               terms = Json::array();
    std::ostringstream os;
    os << "[" << i << "] o [" << j << "] =";
    for (auto const& [l, n] : counts) {
      terms.push_back(Json{{"label", l}, {"multiplicity", n}});
      os << " + " << n << "*[" << l << "]";
    }
    out.result["terms"] = std::move(terms);
    out.text            = os.str() + "\n";
    return out;
  }

  Outcome cmd_butterfly(std::string const& a, std::string const& b, std::size_t i,
                        Config const& cfg) {
    auto g = build_group(a), h = build_group(b);
    auto s = biset_space(g, h, make_budget(cfg.budget));
    if (i >= s->size()) {
      throw PreconditionError("label index out of range");
    }
    FieldSpec const f(cfg.characteristic);
    auto const      factors = butterfly_factorize(s, i);
    bool const      ok      = compose_factors(factors, f) == BisetElement::basis(s, f, i);
    Outcome         out;
    Json            list = Json::array();
    std::ostringstream os;
    os << label_line(*s, i) << "\n";
    for (auto const& fac : factors) {
      list.push_back(fac.describe());
      os << "  " << fac.describe() << "\n";
    }
    os << "recomposes: " << (ok ? "yes" : "no") << "\n";
    out.result["label"]      = i;
    out.result["factors"]    = std::move(list);
    out.result["recomposes"] = ok;
    out.code                 = ok ? kTrue : kFalse;
    out.text                 = os.str();
    return out;
  }

  SearchOptions search_options(Config const& cfg) {
    SearchOptions o;
    o.budget  = make_budget(cfg.budget);
    o.threads = cfg.threads;
    return o;
  }

  std::string generates_text(GeneratesReport const& r) {
    std::ostringstream os;
    os << r.h->name() << " |- " << r.g->name() << " over " << r.field.name() << ": "
       << to_string(r.result) << " (" << r.method << ")\n";
    if (r.method == "span") {
      os << "  products " << r.products_tried << "/" << r.products_total << ", rank "
         << r.rank_reached << "/" << r.dimension << "\n";
    }
    if (!r.note.empty()) {
      os << "  note: " << r.note << "\n";
    }
    if (r.certificate) {
      os << "  certificate: " << r.certificate->terms.size() << " terms\n";
    }
    return os.str();
  }

  Outcome cmd_generates(std::string const& a, std::string const& b, Config const& cfg) {
    auto    r = generates(build_group(a), build_group(b), FieldSpec(cfg.characteristic),
                          search_options(cfg));
    Outcome out;
    out.result = generates_json(r);
    out.code   = verdict_code(r.result);
    out.text   = generates_text(r);
    return out;
  }

  Outcome cmd_nv(std::string const& a, Config const& cfg) {
    auto    g = build_group(a);
    auto    r = is_nv(g, FieldSpec(cfg.characteristic), search_options(cfg));
    Outcome out;
    out.result = nv_json(r);
    out.code   = verdict_code(r.overall);
    std::ostringstream os;
    os << "NV(" << g->name() << ") over " << r.field.name() << ": " << to_string(r.overall) << "\n";
    for (auto const& e : r.entries) {
      os << "  " << describe_group(*e.h) << ": " << to_string(e.report.result) << " ("
         << e.report.method << (e.via.empty() ? "" : " via " + e.via) << ")\n";
    }
    out.text = os.str();
    return out;
  }

  Outcome cmd_semisimple(std::string const& a, bool radical, Config const& cfg) {
    auto            g = build_group(a);
    FieldSpec const f(cfg.characteristic);
    bool const      ss = is_semisimple(*g, f);
    Outcome         out;
    out.result["group"]      = g->name();
    out.result["field"]      = field_json(f);
    out.result["cyclic"]     = is_cyclic(*g);
    out.result["phi"]        = euler_phi(g->order());
    out.result["semisimple"] = ss;
    std::ostringstream os;
    os << "kB(" << g->name() << "," << g->name() << ") over " << f.name() << ": "
       << (ss ? "semisimple" : "not semisimple") << "\n";
    if (radical) {
      if (!f.is_rational()) {
        throw PreconditionError("the radical dimension is computed over Q only");
      }
      std::size_t const d = radical_dim_char0(g, make_budget(cfg.budget));
      out.result["radical_dim"] = d;
      out.result["agrees"]      = (d == 0) == ss;
      os << "  radical dimension " << d << "\n";
    }
    out.code = ss ? kTrue : kFalse;
    out.text = os.str();
    return out;
  }

  Outcome cmd_ssd(std::string const& a) {
    auto    g = build_group(a);
    auto    r = is_s_self_dual(g);
    Outcome out;
    out.result["group"]          = g->name();
    out.result["s_self_dual"]    = r.direct;
    out.result["witness"]        = r.witness;
    out.result["classification"] = r.classification ? Json(*r.classification) : Json(nullptr);
    out.result["agrees"]         = !r.classification || *r.classification == r.direct;
    std::ostringstream os;
    os << g->name() << " s-self-dual: " << (r.direct ? "yes" : "no");
    if (!r.witness.empty()) {
      os << " (subgroup " << r.witness << " is not a quotient)";
    }
    os << "\n";
    if (r.classification) {
      os << "  classification: " << (*r.classification ? "yes" : "no") << "\n";
    }
    out.code = r.direct ? kTrue : kFalse;
    out.text = os.str();
    return out;
  }

  Outcome cmd_simple_dim(std::string const& a, std::string const& b) {
    auto    p = build_group(a), g = build_group(b);
    auto    r = simple_dim_p_group(p, g);
    Outcome out;
    out.result["p"]         = p->name();
    out.result["g"]         = g->name();
    out.result["raw"]       = r.raw;
    out.result["dimension"] = r.dimension;
    Json ex                 = Json::array();
    for (auto const& sc : r.excluded) {
      ex.push_back(section_json(*g, sc.representative));
    }
    out.result["excluded"] = std::move(ex);
    std::ostringstream os;
    os << "dim S_{" << p->name() << "}(" << g->name() << ") = " << r.dimension << " (" << r.raw
       << " section classes, " << r.excluded.size() << " excluded)\n";
    out.text = os.str();
    return out;
  }

  Outcome cmd_sections(std::string const& a) {
    auto               g = build_group(a);
    Outcome            out;
    Json               list = Json::array();
    auto const         classes = section_classes(g);
    std::ostringstream os;
    os << g->name() << ": " << classes.size() << " section classes\n";
    for (auto const& sc : classes) {
      Json j       = section_json(*g, sc.representative);
      j["size"]    = sc.size;
      os << "  |T|=" << sc.representative.top.size() << " |S|=" << sc.representative.bottom.size()
         << " T/S=" << j["quotient"].get<std::string>() << " (" << sc.size << " conjugates)\n";
      list.push_back(std::move(j));
    }
    out.result["group"]    = g->name();
    out.result["count"]    = classes.size();
    out.result["sections"] = std::move(list);
    out.text               = os.str();
    return out;
  }

  Outcome cmd_trace_gram(std::string const& a, Config const& cfg) {
    auto            g = build_group(a);
    FieldSpec const f(cfg.characteristic);
    auto const      r = trace_gram_rank(g, f);
    Outcome         out;
    out.result["group"]      = g->name();
    out.result["field"]      = field_json(f);
    out.result["rank"]       = r.rank;
    out.result["dimension"]  = r.dimension;
    out.result["degenerate"] = r.rank < r.dimension;
    out.text = "trace form on kB(" + g->name() + "," + g->name() + "): rank "
               + std::to_string(r.rank) + " of " + std::to_string(r.dimension) + "\n";
    return out;
  }

  Outcome cmd_burnside_module(std::string const& a, bool matrices, Config const& cfg) {
    auto            g = build_group(a);
    FieldSpec const f(cfg.characteristic);
    auto const      set = burnside_module_matrices(g, f);
    auto const      gg  = biset_space(g, g);
    std::size_t const d = set.matrices.empty() ? 0 : set.matrices[0].rows();
    Outcome         out;
    out.result["group"]       = g->name();
    out.result["field"]       = field_json(f);
    out.result["module_dim"]  = d;
    out.result["labels"]      = set.matrices.size();
    out.result["identity_ok"] = set.matrices[gg->identity_index()] == Matrix::identity(f, d);
    std::ostringstream os;
    os << "kB(" << g->name() << ") over " << f.name() << ": dimension " << d << ", "
       << set.matrices.size() << " action matrices\n";
    if (g->is_abelian()) {
      auto const alt   = burnside_module_matrices_abelian(g, f);
      bool       agree = true;
      for (std::size_t i = 0; i < set.matrices.size(); ++i) {
        agree = agree && set.matrices[i] == alt.matrices[i];
      }
      out.result["closed_form_agrees"] = agree;
      os << "  closed form agrees: " << (agree ? "yes" : "no") << "\n";
    } else {
      out.result["closed_form_agrees"] = nullptr;
    }
    std::size_t p = 0;
    if (is_cyclic(*g) && g->order() > 1 && is_p_group(*g, &p)) {
      auto const r = check_submodules(g, f);
      out.result["submodules"] = Json{{"n_dim", r.n_dim},
                                      {"n_invariant", r.n_invariant},
                                      {"n_prime_dim", r.n_prime_dim},
                                      {"n_prime_invariant", r.n_prime_invariant}};
      os << "  N: dim " << r.n_dim << (r.n_invariant ? ", invariant" : ", not invariant")
         << "\n  N': dim " << r.n_prime_dim
         << (r.n_prime_invariant ? ", invariant" : ", not invariant") << "\n";
    } else {
      out.result["submodules"] = nullptr;
    }
    if (matrices) {
      Json ms = Json::array();
      for (auto const& m : set.matrices) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
          Json row = Json::array();
          for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(m.at(i, j).to_string());
          }
          rows.push_back(std::move(row));
        }
        ms.push_back(std::move(rows));
      }
      out.result["matrices"] = std::move(ms);
    }
    out.text = os.str();
    return out;
  }

  Outcome cmd_essential_out(std::string const& a, Config const& cfg) {
    auto              h = build_group(a);
    std::size_t const d = essential_quotient_dim(h, FieldSpec(cfg.characteristic));
    std::size_t const o = automorphisms(*h).out_order;
    Outcome           out;
    out.result["group"]     = h->name();
    out.result["dimension"] = d;
    out.result["out_order"] = o;
    out.result["agrees"]    = d == o;
    out.code                = d == o ? kTrue : kFalse;
    out.text = "essential quotient of kB(" + h->name() + "," + h->name() + "): dimension "
               + std::to_string(d) + ", |Out| = " + std::to_string(o) + "\n";
    return out;
  }

  Outcome cmd_verify(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw PreconditionError("cannot read " + path);
    }
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (Json::parse_error const& e) {
      throw PreconditionError(std::string("malformed JSON: ") + e.what());
    }
    auto const certs = certificates_in(doc);
    Outcome    out;
    Json       results = Json::array();
    std::size_t ok     = 0;
    std::ostringstream os;
    for (auto const& c : certs) {
      bool const v = verify_certificate(c);
      ok += v ? 1 : 0;
      results.push_back(Json{{"h", c.h->name()},
                             {"g", c.g->name()},
                             {"field", c.field.name()},
                             {"terms", c.terms.size()},
                             {"verified", v}});
      os << c.h->name() << " |- " << c.g->name() << " over " << c.field.name() << " ("
         << c.terms.size() << " terms): " << (v ? "verified" : "FAILED") << "\n";
    }
    out.result["certificates"] = certs.size();
    out.result["verified"]     = ok;
    out.result["results"]      = std::move(results);
    out.code                   = !certs.empty() && ok == certs.size() ? kTrue : kFalse;
    if (certs.empty()) {
      os << "no certificates found\n";
    }
    out.text = os.str();
    return out;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in double Burnside algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  if (char const* env = std::getenv("BISET_CACHE_DIR")) {
    cfg.cache_dir = env;
  }
  app.add_option("--char", cfg.characteristic, "Field characteristic, 0 or a prime");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cache-dir", cfg.cache_dir, "Cache directory (default $BISET_CACHE_DIR)");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1U, 256U));
  app.add_option("--budget", cfg.budget, "Time budget such as 90s, 15m, 2h, or none");
  app.add_option("--seed", cfg.seed, "Random seed (recorded only)");

  std::vector<std::string> args;
  std::size_t              i = 0, j = 0;
  bool                     radical = false, matrices = false;
  std::string              file;

  auto* basis = app.add_subcommand("basis", "Canonical basis of B(G,H)");
  basis->add_option("groups", args, "G H")->expected(2)->required();
  auto* compose = app.add_subcommand("compose", "Compose label i of B(G,H) with label j of B(H,K)");
  compose->add_option("groups", args, "G H K")->expected(3)->required();
  compose->add_option("-i", i, "Label of B(G,H)")->required();
  compose->add_option("-j", j, "Label of B(H,K)")->required();
  auto* butterfly = app.add_subcommand("butterfly", "Butterfly factorization of a label");
  butterfly->add_option("groups", args, "G H")->expected(2)->required();
  butterfly->add_option("-i", i, "Label of B(G,H)")->required();
  auto* gen = app.add_subcommand("generates", "Decide H |- G");
  gen->add_option("groups", args, "H G")->expected(2)->required();
  auto* nv = app.add_subcommand("nv", "Decide whether G is non-vanishing");
  nv->add_option("group", args, "G")->expected(1)->required();
  auto* ss = app.add_subcommand("semisimple", "Semisimplicity of kB(G,G)");
  ss->add_option("group", args, "G")->expected(1)->required();
  ss->add_flag("--radical", radical, "Also compute the radical dimension over Q");
  auto* ssd = app.add_subcommand("ssd", "s-self-duality");
  ssd->add_option("group", args, "G")->expected(1)->required();
  auto* sdim = app.add_subcommand("simple-dim", "Dimension of S_{P,k}(G) in characteristic 0");
  sdim->add_option("groups", args, "P G")->expected(2)->required();
  auto* sections = app.add_subcommand("sections", "Section classes of G");
  sections->add_option("group", args, "G")->expected(1)->required();
  auto* tg = app.add_subcommand("trace-gram", "Rank of the trace form on kB(G,G)");
  tg->add_option("group", args, "G")->expected(1)->required();
  auto* bm = app.add_subcommand("burnside-module", "Action of kB(G,G) on kB(G)");
  bm->add_option("group", args, "G")->expected(1)->required();
  bm->add_flag("--matrices", matrices, "Include the action matrices in JSON output");
  auto* eo = app.add_subcommand("essential-out", "Essential quotient of kB(H,H)");
  eo->add_option("group", args, "H")->expected(1)->required();
  auto* verify = app.add_subcommand("verify", "Re-verify the certificates in a JSON report");
  verify->add_option("file", file, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kUsage;
  }

  CLI::App*   sub     = app.get_subcommands().front();
  std::string command = sub->get_name();
  auto const  start   = std::chrono::steady_clock::now();
  Outcome     out;
  std::string error_kind;
  std::string error_message;
  int         code = kTrue;
  try {
    FieldSpec{cfg.characteristic};  // validates --char
    set_cache_directory(cfg.cache_dir);
    make_budget(cfg.budget);
    if (sub == basis) {
      out = cmd_basis(args[0], args[1], cfg);
    } else if (sub == compose) {
      out = cmd_compose(args, i, j, cfg);
    } else if (sub == butterfly) {
      out = cmd_butterfly(args[0], args[1], i, cfg);
    } else if (sub == gen) {
      out = cmd_generates(args[0], args[1], cfg);
    } else if (sub == nv) {
      out = cmd_nv(args[0], cfg);
    } else if (sub == ss) {
      out = cmd_semisimple(args[0], radical, cfg);
    } else if (sub == ssd) {
      out = cmd_ssd(args[0]);
    } else if (sub == sdim) {
      out = cmd_simple_dim(args[0], args[1]);
    } else if (sub == sections) {
      out = cmd_sections(args[0]);
    } else if (sub == tg) {
      out = cmd_trace_gram(args[0], cfg);
    } else if (sub == bm) {
      out = cmd_burnside_module(args[0], matrices, cfg);
    } else if (sub == eo) {
      out = cmd_essential_out(args[0], cfg);
    } else {
      args.push_back(file);
      out = cmd_verify(file);
    }
    code = out.code;
  } catch (ParseError const& e) {
    code = kParse, error_kind = "parse", error_message = e.what();
  } catch (PreconditionError const& e) {
    code = kPrecondition, error_kind = "precondition", error_message = e.what();
  } catch (BudgetExceeded const& e) {
    code = kInconclusive, error_kind = "budget", error_message = e.what();
  } catch (std::invalid_argument const& e) {
    code = kUsage, error_kind = "usage", error_message = e.what();
  }
  double const elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!error_kind.empty()) {
    std::cerr << "error (" << error_kind << "): " << error_message << "\n";
  }
  if (cfg.format == "json") {
    Json doc;
    doc["schema"]  = kReportSchema;
    doc["command"] = command;
    doc["args"]    = args;
    doc["characteristic"] = cfg.characteristic;
    doc["exit_code"] = code;
    if (error_kind.empty()) {
      doc["result"] = std::move(out.result);
    } else {
      doc["error"] = Json{{"kind", error_kind}, {"message", error_message}};
    }
    doc["meta"] = Json{{"elapsed_seconds", elapsed},
                       {"threads", cfg.threads},
                       {"seed", cfg.seed},
                       {"budget", cfg.budget},
                       {"cache_dir", cfg.cache_dir}};
    std::cout << doc.dump(2) << "\n";
  } else if (error_kind.empty()) {
    std::cout << out.text;
  }
  return code;
}
