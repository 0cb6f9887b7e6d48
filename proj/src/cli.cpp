#include "detloci/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "detloci/fixtures.hpp"
#include "detloci/io.hpp"

namespace detloci {

namespace {

/// A subcommand outcome: the JSON report and whether its check passed.
struct Outcome {
  Json report;
  bool ok = true;
};

struct Globals {
  std::int64_t order = 0;
  int bound = kDefaultBound;
  std::optional<std::int64_t> order_override() const {
    return order > 0 ? std::optional<std::int64_t>(order) : std::nullopt;
  }
};

HyperplaneLocus load_locus(const std::string& path) {
  try {
    return read_locus(load_json_file(path));
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + what);
  }
}

FreeComplex load_complex(const std::string& path, const Globals& g) {
  try {
    return read_complex(load_json_file(path), g.order_override());
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + what);
  }
}

void require_same_dim(const std::vector<HyperplaneLocus>& loci) {
  for (const auto& l : loci)
    if (l.dim() != loci.front().dim())
      throw InputError("inconsistent number of variables across inputs: " + std::to_string(loci.front().dim()) +
                       " and " + std::to_string(l.dim()));
}

Json field_info(const Ring& ring) { return Json{{"nvars", ring.nvars}, {"cyclotomic_order", ring.order()}}; }

Json intvec_json(const IntVec& v) { return Json(v); }

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

UMatrix to_umatrix(const PolyMatrix& m, const FieldPtr& field) {
  UMatrix out(m.rows(), m.cols(), UPoly(field));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_upoly(m(i, j));
  return out;
}

ElemMatrix to_constants(const PolyMatrix& m, const FieldPtr& field) {
  ElemMatrix out(m.rows(), m.cols(), CycloElem(field));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const LaurentPoly& p = m(i, j);
      if (!p.is_constant()) throw InputError("detfactors needs a matrix of constants; entry (" + std::to_string(i) +
                                             "," + std::to_string(j) + ") is " + p.to_string());
      if (!p.is_zero()) out(i, j) = p.terms().front().coeff;
    }
  return out;
}

Json fixture_json(const FixtureResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name}, {"provenance", provenance_name(c.provenance)}, {"pass", c.pass},
                          {"detail", c.detail}});
  return Json{{"fixture", r.name}, {"description", r.description}, {"pass", r.pass()}, {"checks", checks}};
}

Json specialization_json(const SpecializationResult& s, const PrimeTorusDivisor& c, int degree) {
  return Json{{"degree", degree},
              {"divisor", to_json(c)},
              {"ord", s.ord},
              {"jordan", s.jordan},
              {"b", intvec_json(s.point.b)},
              {"lambda", s.point.lambda.to_string()},
              {"generic", s.generic}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Determinantal-factor ideals, support divisors and zero-locus calculus", "detloci"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--cyclotomic-order", g.order, "Work over Q(e(1/N)); must contain every e(a/b) in the input")
      ->check(CLI::PositiveNumber);
  app.add_option("--bound", g.bound, "Search bound for candidate divisors and generic points")
      ->check(CLI::PositiveNumber);

  std::function<Outcome()> action;

  // ---- complexes
  std::string complex_path;
  int degree = 0, k = 0;
  for (const char* name : {"cdf", "jump"}) {
    const bool is_jump = std::string(name) == "jump";
    auto* sub = app.add_subcommand(name, is_jump ? "Cohomology jump ideal J^i_k of a complex"
                                                 : "Cohomological determinantal-factor ideal I^i_k of a complex");
    sub->add_option("--complex", complex_path, "Complex JSON file")->required();
    sub->add_option("--degree,-i", degree, "Cohomological degree i")->required();
    sub->add_option("--k,-k", k, "Index k")->required();
    sub->callback([&, is_jump] {
      action = [&, is_jump] {
        const FreeComplex f = load_complex(complex_path, g);
        const IdealGens ideal = is_jump ? jump_ideal(f, degree, k) : cdf_ideal(f, degree, k);
        return Outcome{Json{{"degree", degree}, {"k", k}, {"ring", field_info(f.ring())}, {"ideal", to_json(ideal)}}};
      };
    });
  }

  // ---- smith / detfactors
  std::string matrix_path;
  auto* smith = app.add_subcommand("smith", "Smith normal form over Q(zeta)[t]");
  smith->add_option("--matrix", matrix_path, "Matrix JSON file (one variable)")->required();
  smith->callback([&] {
    action = [&] {
      const MatrixInput in = read_matrix(load_json_file(matrix_path), g.order_override());
      if (in.ring.nvars != 1) throw InputError("smith needs a one-variable ring");
      const UMatrix m = to_umatrix(in.matrix, in.ring.field);
      const SmithForm s = smith_normal_form(m, in.ring.field);
      Json factors = Json::array();
      for (const auto& d : s.d) factors.push_back(to_json(d));
      const bool verified = verify_smith(m, s, in.ring.field);
      return Outcome{Json{{"invariant_factors", factors},
                          {"rank", s.rank()},
                          {"verified", verified},
                          {"ring", field_info(in.ring)}},
                     verified};
    };
  });

  std::string eigenvalue;
  auto* detf = app.add_subcommand("detfactors", "Determinantal factors of tI - phi for a constant matrix phi");
  detf->add_option("--matrix", matrix_path, "Matrix JSON file with constant entries")->required();
  detf->add_option("--eigenvalue", eigenvalue, "Angle a/b; also report the largest Jordan block at e(a/b)");
  detf->callback([&] {
    action = [&] {
      Json doc = load_json_file(matrix_path);
      std::optional<TorsionAngle> xi;
      if (!eigenvalue.empty()) {
        try {
          xi = TorsionAngle::parse(eigenvalue);
        } catch (const std::invalid_argument& e) {
          throw ParseError(eigenvalue, 0, e.what());
        }
      }
      std::optional<std::int64_t> order = g.order_override();
      if (xi && !order) order = lcm64(resolve_order(doc, std::nullopt), xi->den());
      const MatrixInput in = read_matrix(doc, order);
      const ElemMatrix phi = to_constants(in.matrix, in.ring.field);
      if (phi.rows() != phi.cols()) throw InputError("detfactors needs a square matrix");
      Json factors = Json::array();
      for (const auto& b : determinantal_factors(phi)) factors.push_back(to_json(b));
      Json report{{"factors", factors}, {"minimal_polynomial", to_json(minimal_polynomial(phi))},
                  {"ring", field_info(in.ring)}};
      if (xi) report["max_jordan_block"] = Json{{"eigenvalue", xi->to_string()}, {"size", max_jordan_size(phi, *xi)}};
      return Outcome{report};
    };
  });

  // ---- loci
  std::string locus_path, compare_path;
  auto* exp = app.add_subcommand("exp", "Reduced Exp image of a locus");
  exp->add_option("--locus", locus_path, "Locus JSON file")->required();
  exp->callback([&] {
    action = [&] {
      const HyperplaneLocus l = load_locus(locus_path);
      std::map<PrimeTorusDivisor, std::vector<std::string>> sources;
      for (const auto& e : l.hyperplanes()) sources[exp_hyperplane(e.h)].push_back(e.h.to_string());
      Json divisors = Json::array();
      for (const auto& [c, from] : sources) {
        Json d = to_json(c);
        d.erase("mult");
        d["text"] = c.to_string();
        d["sources"] = from;
        divisors.push_back(d);
      }
      return Outcome{Json{{"divisors", divisors}}};
    };
  });

  auto* slopes = app.add_subcommand("slopes", "Primitive slopes of a locus");
  slopes->add_option("--locus", locus_path, "Locus JSON file")->required();
  slopes->callback([&] {
    action = [&] {
      const HyperplaneLocus l = load_locus(locus_path);
      Json all = Json::array(), oblique = Json::array();
      for (const auto& s : slope_set(l)) all.push_back(s);
      for (const auto& s : slope_set(oblique_part(l))) oblique.push_back(s);
      return Outcome{Json{{"slopes", all}, {"oblique_slopes", oblique}}};
    };
  });

  auto* obl = app.add_subcommand("oblique", "Oblique part of a locus and its Exp image");
  obl->add_option("--locus", locus_path, "Locus JSON file")->required();
  obl->add_option("--compare", compare_path, "Second locus; check that the oblique Exp images agree");
  obl->callback([&] {
    action = [&] {
      const HyperplaneLocus l = load_locus(locus_path);
      const HyperplaneLocus part = oblique_part(l);
      Json image = Json::array();
      for (const auto& c : exp_locus(part)) image.push_back(to_json(c));
      Outcome o{Json{{"oblique", to_json(part)}, {"exp", image}}};
      if (!compare_path.empty()) {
        const HyperplaneLocus other = load_locus(compare_path);
        require_same_dim({l, other});
        o.ok = exp_oblique_equal(l, other);
        o.report["equal"] = o.ok;
      }
      return o;
    };
  });

  std::vector<std::string> component_paths(4);
  std::string m_text, pi_text;
  auto* combine = app.add_subcommand("combine", "Zero locus of B^m from the loci of B^{e_j}");
  for (int j = 0; j < 4; ++j)
    combine->add_option("--e" + std::to_string(j + 1), component_paths[static_cast<std::size_t>(j)],
                        "Locus of B^{e_" + std::to_string(j + 1) + "}");
  combine->add_option("--m", m_text, "Exponent vector, e.g. 1,1")->required();
  combine->add_option("--pi", pi_text, "Permutation of 1..r, e.g. 2,1 (default identity)");
  combine->callback([&] {
    action = [&] {
      const IntVec m = parse_int_list(m_text);
      std::vector<HyperplaneLocus> comps;
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (j >= component_paths.size() || component_paths[j].empty())
          throw InputError("missing --e" + std::to_string(j + 1) + " for m of length " + std::to_string(m.size()));
        comps.push_back(load_locus(component_paths[j]));
      }
      for (std::size_t j = m.size(); j < component_paths.size(); ++j)
        if (!component_paths[j].empty()) throw InputError("--e" + std::to_string(j + 1) + " given but m is shorter");
      require_same_dim(comps);
      if (comps.front().dim() != m.size())
        throw InputError("m has length " + std::to_string(m.size()) + " but the loci have " +
                         std::to_string(comps.front().dim()) + " variables");
      IntVec pi;
      if (pi_text.empty()) {
        for (std::size_t j = 0; j < m.size(); ++j) pi.push_back(static_cast<std::int64_t>(j + 1));
      } else {
        pi = parse_int_list(pi_text);
      }
      return Outcome{to_json(combine_bm(comps, m, pi))};
    };
  });

  std::string inner_path, outer_path;
  auto* contain = app.add_subcommand("contain", "Check that one locus lies inside another");
  contain->add_option("--inner", inner_path, "Locus that should be contained")->required();
  contain->add_option("--outer", outer_path, "Containing locus")->required();
  contain->callback([&] {
    action = [&] {
      const HyperplaneLocus a = load_locus(inner_path), b = load_locus(outer_path);
      require_same_dim({a, b});
      const ContainmentResult r = containment_check(a, b);
      Json report{{"contained", r.contained}, {"covers", r.covers}};
      report["witness"] = r.witness ? rationals_json(*r.witness) : Json(nullptr);
      report["failing"] = r.failing.empty() ? Json(nullptr) : Json(r.failing);
      return Outcome{report, r.contained};
    };
  });

  std::string hyperplane_text;
  auto* filter = app.add_subcommand("filter", "Box filter for a candidate polar hyperplane");
  filter->add_option("--locus", locus_path, "Zero locus of B_F")->required();
  filter->add_option("--hyperplane", hyperplane_text, "Candidate, e.g. 3*s1+3*s2+10")->required();
  filter->callback([&] {
    action = [&] {
      const HyperplaneLocus l = load_locus(locus_path);
      const AffineHyperplane c = parse_hyperplane(hyperplane_text, l.dim());
      const FilterResult r = polar_candidate_filter(c, l);
      return Outcome{Json{{"hyperplane", c.to_string()},
                          {"m", r.m},
                          {"k", r.k ? Json(*r.k) : Json(nullptr)},
                          {"accepted", r.k.has_value()}}};
    };
  });

  int steps = 1;
  auto* propagate = app.add_subcommand("propagate", "Close a polar model under H -> H - e_i");
  propagate->add_option("--locus", locus_path, "Polar model (multiplicities are orders)")->required();
  propagate->add_option("--steps", steps, "Number of rounds")->check(CLI::NonNegativeNumber);
  propagate->callback([&] {
    action = [&] { return Outcome{to_json(propagate_polar(load_locus(locus_path), steps))}; };
  });

  std::string b_text;
  auto* slice = app.add_subcommand("slice", "Poles of a polar model along the ray t -> t*b");
  slice->add_option("--locus", locus_path, "Polar model (multiplicities are orders)")->required();
  slice->add_option("--b", b_text, "Positive direction, e.g. 1,2")->required();
  slice->callback([&] {
    action = [&] {
      const HyperplaneLocus l = load_locus(locus_path);
      const IntVec b = parse_int_list(b_text);
      if (b.size() != l.dim()) throw InputError("b has the wrong length");
      Json poles = Json::array();
      for (const auto& p : specialize_slice(l, b)) {
        Json src = Json::array();
        for (const auto& h : p.sources) src.push_back(h.to_string());
        poles.push_back(Json{{"pole", to_json(p.pole)}, {"order_sum", p.order_sum}, {"generic", p.generic},
                             {"sources", src}});
      }
      return Outcome{Json{{"b", b}, {"poles", poles}, {"analytic_condition", "unchecked"}}};
    };
  });

  std::vector<std::string> divisor_texts;
  bool no_specialize = false;
  auto* support = app.add_subcommand("support", "Determinantal-factor and minimal divisors of a complex");
  support->add_option("--complex", complex_path, "Complex JSON file")->required();
  support->add_option("--divisor", divisor_texts, "Candidate divisor u1,u2:a/b (repeatable); default: search");
  support->add_flag("--no-specialize", no_specialize, "Skip the one-parameter Jordan-block comparison");
  support->callback([&] {
    action = [&] {
      FreeComplex f = load_complex(complex_path, g);
      std::vector<PrimeTorusDivisor> cands;
      if (divisor_texts.empty()) {
        cands = candidate_divisors(f, g.bound);
      } else {
        std::int64_t need = 1;
        for (const auto& t : divisor_texts) {
          cands.push_back(parse_divisor(t));
          if (cands.back().dim() != static_cast<std::size_t>(f.ring().nvars))
            throw InputError("divisor " + t + " does not match the number of variables");
          need = lcm64(need, cands.back().xi.den());
        }
        if (f.ring().order() % need != 0) {
          if (g.order_override())
            throw InputError("cyclotomic order does not contain the divisor roots of unity");
          f = load_complex(complex_path, Globals{lcm64(f.ring().order(), need), g.bound});
        }
      }
      const SupportReport report = support_report(f, cands);
      Json out = to_json(report);
      out["ring"] = field_info(f.ring());
      if (!no_specialize) {
        Json spec = Json::array();
        bool ok = true;
        for (const auto& d : report.degrees)
          for (const auto& [c, ord] : d.minimal.terms()) {
            if (ord <= 0) continue;
            std::vector<PrimeTorusDivisor> others;
            for (const auto& x : report.candidates)
              if (!(x == c)) others.push_back(x);
            const GenericPoint at = generic_point_on_divisor(c, others, g.bound);
            const SpecializationResult s = specialization_multiplicity(f, c, d.degree, at, g.bound);
            ok = ok && (!s.generic || s.ord == s.jordan);
            spec.push_back(specialization_json(s, c, d.degree));
          }
        out["specialization"] = spec;
        return Outcome{out, ok};
      }
      return Outcome{out};
    };
  });

  // ---- fixtures
  auto* fixtures = app.add_subcommand("fixtures", "Worked examples with expected values");
  fixtures->require_subcommand(1);
  auto* flist = fixtures->add_subcommand("list", "List fixture names");
  flist->callback([&] {
    action = [] { return Outcome{Json{{"fixtures", fixture_names()}}}; };
  });
  std::string fixture_name;
  auto* frun = fixtures->add_subcommand("run", "Run one fixture or all");
  frun->add_option("name", fixture_name, "Fixture name or 'all'")->required();
  frun->callback([&] {
    action = [&] {
      std::vector<FixtureResult> results;
      if (fixture_name == "all") {
        results = run_all_fixtures();
      } else {
        try {
          results.push_back(run_fixture(fixture_name));
        } catch (const std::invalid_argument& e) {
          throw InputError(e.what());
        }
      }
      Json arr = Json::array();
      bool ok = true;
      for (const auto& r : results) {
        arr.push_back(fixture_json(r));
        ok = ok && r.pass();
      }
      return Outcome{Json{{"fixtures", arr}, {"pass", ok}}, ok};
    };
  });
  std::string export_dir;
  auto* fexport = fixtures->add_subcommand("export", "Write the fixture loci as JSON files");
  fexport->add_option("--dir", export_dir, "Output directory")->required();
  fexport->callback([&] {
    action = [&] {
      std::filesystem::create_directories(export_dir);
      Json written = Json::array();
      for (const auto& [name, locus] : exported_loci()) {
        const auto path = std::filesystem::path(export_dir) / (name + ".json");
        std::ofstream file(path);
        if (!file) throw InputError("cannot write " + path.string());
        file << to_json(locus).dump(2) << "\n";
        written.push_back(path.filename().string());
      }
      return Outcome{Json{{"written", written}}};
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  if (!action) {
    err << "error: no action\n";
    return kExitInputError;
  }
  try {
    const Outcome o = action();
    out << o.report.dump(2) << "\n";
    return o.ok ? kExitOk : kExitCheckFailed;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace detloci
