#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "kmw/descriptor.hpp"
#include "kmw/error.hpp"
#include "kmw/homology_reports.hpp"
#include "kmw/scissors.hpp"
#include "kmw/verify.hpp"

using namespace kmw;
using ojson = nlohmann::ordered_json;

namespace {

struct Config {
  std::optional<long> q;
  std::string q_range;
  std::string field = "Q";
  std::optional<long> prime_bound;
  int samples = 100;
  std::uint64_t seed = 42;
  int degree = 2;
  bool json = false;
  bool csv = false;
  std::string out;
  std::string matrix;
};

struct Output {
  std::string text;
  int code = 0;
};

ojson num(const Int& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

ojson factors(const std::vector<Int>& v) {
  ojson a = ojson::array();
  for (const auto& d : v) a.push_back(num(d));
  return a;
}

ojson group_json(const AbGroup& g) {
  return {{"invariant_factors", factors(g.invariant_factors())}, {"free_rank", g.free_rank()}};
}

std::string join_factors(const std::vector<Int>& v) {
  std::string s;
  for (const auto& d : v) s += (s.empty() ? "" : " ") + d.get_str();
  return s;
}

bool is_odd_prime_power(long q) {
  if (q < 5 || q % 2 == 0) return false;
  return factor_integer(Int(q)).size() == 1;
}

std::vector<long> q_list(const Config& c) {
  if (c.q) return {*c.q};
  if (c.q_range.empty()) throw Error(Errc::InvalidInput, "--q or --q-range is required");
  auto colon = c.q_range.find(':');
  if (colon == std::string::npos) throw Error(Errc::InvalidInput, "--q-range expects A:B");
  long a, b;
  try {
    a = std::stol(c.q_range.substr(0, colon));
    b = std::stol(c.q_range.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(Errc::InvalidInput, "--q-range expects integers A:B");
  }
  std::vector<long> out;
  for (long q = a; q <= b; ++q)
    if (is_odd_prime_power(q)) out.push_back(q);
  return out;
}

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("KMW_THREADS")) {
    long k = std::atol(env);
    if (k >= 1) n = static_cast<unsigned>(k);
  }
  return n;
}

// Runs fn over qs in parallel; results keep input order.
template <class R>
std::vector<R> sweep(const std::vector<long>& qs, const std::function<R(long)>& fn) {
  std::vector<R> out(qs.size());
  std::vector<std::exception_ptr> errs(qs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i; (i = next++) < qs.size();) {
      try {
        out[i] = fn(qs[i]);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  unsigned n = std::min<unsigned>(thread_cap(), static_cast<unsigned>(std::max<std::size_t>(1, qs.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

ojson single_or_array(const std::vector<ojson>& rows, bool single) {
  if (single) return rows.front();
  ojson a = ojson::array();
  for (const auto& r : rows) a.push_back(r);
  return a;
}

Output emit_rows(const Config& c, const std::vector<ojson>& rows, const std::vector<std::string>& cols,
                 const std::vector<std::string>& human, bool single) {
  Output o;
  for (const auto& r : rows)
    if (r.contains("pass") && !r["pass"].get<bool>()) o.code = 1;
  if (c.json) {
    o.text = single_or_array(rows, single).dump() + "\n";
  } else if (c.csv) {
    std::ostringstream s;
    for (std::size_t i = 0; i < cols.size(); ++i) s << (i ? "," : "") << cols[i];
    s << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        const ojson& v = r[cols[i]];
        std::string cell;
        if (v.is_array()) {
          for (const auto& x : v) cell += (cell.empty() ? "" : " ") + (x.is_string() ? x.get<std::string>() : x.dump());
        } else if (v.is_string()) {
          cell = v.get<std::string>();
        } else {
          cell = v.dump();
        }
        s << (i ? "," : "") << cell;
      }
      s << "\n";
    }
    o.text = s.str();
  } else {
    for (const auto& h : human) o.text += h + "\n";
  }
  return o;
}

Output run_pb(const Config& c) {
  auto qs = q_list(c);
  struct Row {
    ojson j;
    std::string h;
  };
  auto rows = sweep<Row>(qs, [](long q) {
    AbGroup g = pb_group(q), half = odd_part(g);
    Int expected = odd_part(Int(q + 1));
    bool pass = half.free_rank() == 0 && half.order() == expected && half.invariant_factors().size() <= 1;
    ojson j;
    j["q"] = q;
    j["group"] = {{"invariant_factors", factors(g.invariant_factors())}};
    j["half"] = {{"invariant_factors", factors(half.invariant_factors())}};
    j["expected"] = num(expected);
    j["pass"] = pass;
    std::string h = "q=" + std::to_string(q) + "  P = " + g.describe() + "  1/2 P = " + half.describe() +
                    "  expected Z/" + expected.get_str() + "  " + (pass ? "ok" : "FAIL");
    return Row{j, h};
  });
  std::vector<ojson> js;
  std::vector<std::string> hs;
  for (auto& r : rows) {
    if (c.q) r.j.erase("q");
    js.push_back(r.j);
    hs.push_back(r.h);
  }
  if (c.csv)
    for (std::size_t i = 0; i < js.size(); ++i) {
      js[i]["q"] = qs[i];
      js[i]["P"] = js[i]["group"]["invariant_factors"];
      js[i]["half"] = js[i]["half"]["invariant_factors"];
    }
  return emit_rows(c, js, {"q", "P", "half", "expected", "pass"}, hs, c.q.has_value());
}

Output run_rp(const Config& c) {
  auto qs = q_list(c);
  auto rows = sweep<ojson>(qs, [](long q) {
    FlatPresentation fp = rp_presentation(q);
    ojson j;
    j["q"] = q;
    j["generators"] = fp.labels.size();
    j["relations"] = fp.relations.rows();
    j["five_term_pairs"] = fp.five_term_pairs;
    j["group"] = group_json(fp.group);
    return j;
  });
  std::vector<std::string> hs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& j = rows[i];
    hs.push_back("q=" + std::to_string(qs[i]) + "  generators " + j["generators"].dump() + "  relation rows " +
                 j["relations"].dump() + "  RP = " + rp_presentation(qs[i]).group.describe());
    if (c.csv) rows[i]["RP"] = rows[i]["group"]["invariant_factors"];
  }
  return emit_rows(c, rows, {"q", "generators", "relations", "five_term_pairs", "RP"}, hs, c.q.has_value());
}

Output run_derived(const Config& c) {
  auto qs = q_list(c);
  auto rows = sweep<ojson>(qs, [](long q) {
    DerivedGroups d = derived_groups(q);
    Int expected = odd_part(Int(q + 1));
    AbGroup half_p = odd_part(d.P), half_rp1 = odd_part(d.RP1), half_rbl = odd_part(d.rblker);
    bool order_eq = half_rp1.order() == half_rbl.order() * half_p.order();
    bool pass = d.rblker.is_trivial() && d.rb_to_b_surjective && 4 % d.k1cap_exponent == 0 && order_eq &&
                half_p.order() == expected;
    ojson j;
    j["q"] = q;
    j["P"] = factors(d.P.invariant_factors());
    j["half_P"] = factors(half_p.invariant_factors());
    j["B"] = factors(d.B.invariant_factors());
    j["RB"] = factors(d.RB.invariant_factors());
    j["RP1"] = factors(d.RP1.invariant_factors());
    j["half_RP1"] = factors(half_rp1.invariant_factors());
    j["rblker"] = factors(d.rblker.invariant_factors());
    j["RP_tilde"] = factors(d.RPtilde.invariant_factors());
    j["K1_cap_exponent"] = num(d.k1cap_exponent);
    j["RB_to_B_surjective"] = d.rb_to_b_surjective;
    j["expected"] = num(expected);
    j["pass"] = pass;
    return j;
  });
  std::vector<std::string> hs;
  for (const auto& j : rows) {
    std::string h = "q=" + j["q"].dump();
    for (const char* k : {"P", "half_P", "B", "RB", "RP1", "rblker", "RP_tilde"}) h += "  " + std::string(k) + "=" + j[k].dump();
    h += "  exp(RP1 n K1)=" + j["K1_cap_exponent"].dump() + (j["pass"].get<bool>() ? "  ok" : "  FAIL");
    hs.push_back(h);
  }
  return emit_rows(c, rows, {"q", "P", "half_P", "RP1", "rblker", "expected", "pass"}, hs, c.q.has_value());
}

Output emit_verify(const Config& c, const VerifyResult& r) {
  Output o;
  o.code = r.pass ? 0 : 1;
  if (c.json) {
    o.text = r.to_json().dump() + "\n";
  } else if (c.csv) {
    o.text = "suite,checks,pass,witness\n" + r.name + "," + std::to_string(r.checks) + "," + (r.pass ? "true" : "false") +
             ",\"" + r.witness + "\"\n";
  } else {
    o.text = r.name + ": " + std::to_string(r.checks) + " checks, " + (r.pass ? "all passed" : "FAILED") + "\n";
    if (!r.pass) o.text += "smallest witness: " + r.witness + "\n";
  }
  return o;
}

Output emit_descriptor(const Config& c, const GroupDescriptor& d) {
  Output o;
  if (c.json) {
    o.text = ojson::parse(d.to_json().dump()).dump() + "\n";
  } else if (c.csv) {
    o.text = "label,free_rank,cyclic_factors,bound\n\"" + d.label + "\"," +
             (d.free_rank ? std::to_string(*d.free_rank) : "inf") + "," + join_factors(d.cyclic_factors) + "," +
             (d.bound ? std::to_string(*d.bound) : "") + "\n";
  } else {
    o.text = d.label + " = " + d.describe() + "\n";
    for (const auto& s : d.symbolic) o.text += "  " + s.name + ": " + s.cite + "\n";
    for (const auto& p : d.provenance) o.text += "  from: " + p + "\n";
  }
  return o;
}

Output run_snf(const Config& c) {
  std::string text = c.matrix;
  if (text.empty()) {
    std::ostringstream s;
    s << std::cin.rdbuf();
    text = s.str();
  } else if (text.front() != '{') {
    std::ifstream in(text);
    if (!in) throw Error(Errc::InvalidInput, "cannot read " + text);
    std::ostringstream s;
    s << in.rdbuf();
    text = s.str();
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidInput, std::string("matrix JSON: ") + e.what());
  }
  IntMatrix m = matrix_from_json(j);
  SmithForm f = snf(m);
  std::vector<Int> diag;
  for (std::size_t i = 0; i < std::min(f.d.rows(), f.d.cols()); ++i) diag.push_back(f.d(i, i));
  AbGroup g(std::vector<std::string>(m.cols()), m);
  Output o;
  if (c.json) {
    ojson r;
    r["D"] = ojson::parse(matrix_json(f.d).dump());
    r["U"] = ojson::parse(matrix_json(f.u).dump());
    r["V"] = ojson::parse(matrix_json(f.v).dump());
    r["diagonal"] = ints_json(diag);
    r["cokernel"] = {{"invariant_factors", ints_json(g.invariant_factors())}, {"free_rank", g.free_rank()}};
    o.text = r.dump() + "\n";
  } else {
    o.text = "diagonal: " + join_factors(diag) + "\ncokernel: " + g.describe() + "\n";
  }
  return o;
}

Field field_arg(const Config& c) { return Field::parse(c.field); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kmw: exact computations with Milnor-Witt K-theory, Witt rings and scissors congruence groups"};
  app.require_subcommand(1);
  Config cfg;
  std::function<Output()> action;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--q", cfg.q, "odd prime power");
    sub->add_option("--q-range", cfg.q_range, "sweep A:B over odd prime powers");
    sub->add_option("--field", cfg.field, "Q, F<q>, F<q>t or Qt");
    sub->add_option("--prime-bound", cfg.prime_bound, "truncate direct sums over primes");
    sub->add_option("--samples", cfg.samples, "random instances");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_flag("--json", cfg.json, "JSON output");
    sub->add_flag("--csv", cfg.csv, "CSV output");
    sub->add_option("--out", cfg.out, "write output to FILE");
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<Output()> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    common(sub);
    sub->callback([&action, fn]() { action = fn; });
    return sub;
  };

  leaf(&app, "pb", "P(F_q) and its odd part", [&] { return run_pb(cfg); });
  leaf(&app, "rp", "flattened presentation of RP(F_q)", [&] { return run_rp(cfg); });
  leaf(&app, "derived", "B, RB, RP1, rblker, RP~ for F_q", [&] { return run_derived(cfg); });
  auto* snf_cmd = leaf(&app, "snf", "Smith normal form of a JSON matrix", [&] { return run_snf(cfg); });
  snf_cmd->add_option("matrix", cfg.matrix, "matrix JSON or file (default: stdin)");

  CLI::App* verify = app.add_subcommand("verify", "seeded verification suites");
  verify->require_subcommand(1);
  leaf(verify, "mw-relations", "Milnor-Witt relations", [&] {
    return emit_verify(cfg, verify_mw_relations(field_arg(cfg), cfg.samples, cfg.seed));
  });
  leaf(verify, "delta-t", "residue identities at t", [&] {
    return emit_verify(cfg, verify_delta_t(field_arg(cfg), cfg.samples, cfg.seed));
  });
  leaf(verify, "sv", "specialization kills five-term relations", [&] {
    Output o;
    for (long q : q_list(cfg)) {
      Output one = emit_verify(cfg, verify_sv(q, cfg.samples, cfg.seed));
      o.text += one.text;
      o.code = std::max(o.code, one.code);
    }
    return o;
  });
  leaf(verify, "witt", "Witt ring structure oracle", [&] {
    return emit_verify(cfg, verify_witt(field_arg(cfg), cfg.samples, cfg.seed));
  });
  leaf(verify, "hilbert-product", "Hilbert reciprocity over Q", [&] {
    return emit_verify(cfg, verify_hilbert_product(cfg.samples, cfg.seed));
  });

  CLI::App* report = app.add_subcommand("report", "homology descriptors");
  report->require_subcommand(1);
  leaf(report, "h2-laurent", "H2(SL2(k[t,1/t]))", [&] {
    return emit_descriptor(cfg, h2_laurent_report(field_arg(cfg), cfg.prime_bound));
  });
  leaf(report, "h3-laurent", "1/2 H3(SL2(k[t,1/t]))", [&] {
    return emit_descriptor(cfg, h3_laurent_report(field_arg(cfg), cfg.prime_bound));
  });
  auto* stab = leaf(report, "stabilization", "stabilization kernels", [&] {
    return emit_descriptor(cfg, stabilization_report(field_arg(cfg), cfg.degree));
  });
  stab->add_option("--degree", cfg.degree, "2 or 3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Output o;
  try {
    if (cfg.json && cfg.csv) throw Error(Errc::InvalidInput, "--json and --csv are exclusive");
    o = action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 2;
    }
    f << o.text;
  } else {
    std::cout << o.text;
  }
  return o.code;
}
