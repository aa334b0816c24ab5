#include "pencils/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <tuple>
#include <utility>

#include <CLI11.hpp>

#include "pencils/canonical.hpp"
#include "pencils/exactla.hpp"
#include "pencils/io.hpp"
#include "pencils/pencil.hpp"

namespace pencils {

namespace {

struct Options {
  std::string path;
  std::string out_prefix;
  bool json = false;
  bool weierstrass_only = false;
  bool scramble_output = false;
  std::uint64_t seed = 0;
};

void emit(std::ostream& out, const nlohmann::json& j) { out << dump_json(j); }

std::string list_text(const std::vector<std::size_t>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(xs[i]);
  }
  return s + "]";
}

std::string blocks_text(const std::map<std::size_t, std::size_t>& m) {
  if (m.empty()) return "none";
  std::string s;
  for (const auto& [size, count] : m) {
    if (!s.empty()) s += ", ";
    s += std::to_string(count) + " of size " + std::to_string(size);
  }
  return s;
}

nlohmann::json strangeness_json(const Strangeness& str) {
  return {{"d", str.d}, {"a", str.a}, {"s", str.s}};
}

void write_out(const std::string& path, const nlohmann::json& doc,
               std::vector<std::string>& written) {
  write_text_file(path, dump_json(doc));
  written.push_back(path);
}

void report_written(const Options& opt, std::ostream& out,
                    const std::vector<std::string>& written,
                    nlohmann::json* report) {
  if (report) (*report)["written"] = written;
  if (!opt.json)
    for (const std::string& path : written) out << "wrote " << path << "\n";
}

int do_analyze(const Options& opt, std::ostream& out) {
  Pencil p = pencil_from_json(load_json_file(opt.path));
  DefectProfile prof = full_profile(p);
  Strangeness str = strangeness(p);
  Subspace consistent = preimage(p.a, image(p.e));
  if (opt.json) {
    nlohmann::json j;
    j["rows"] = p.codomain_dim();
    j["cols"] = p.domain_dim();
    j["index"] = prof.index;
    j["alpha"] = prof.alpha;
    j["beta_plus"] = prof.beta_plus;
    j["beta_minus"] = prof.beta_minus;
    j["delta"] = prof.delta;
    j["strangeness"] = strangeness_json(str);
    j["regular"] = is_regular(prof);
    j["consistent_subspace"] = {{"dim", consistent.dim()},
                                {"basis", matrix_to_json(consistent.basis())}};
    emit(out, j);
  } else {
    out << "pencil: " << p.codomain_dim() << " x " << p.domain_dim() << "\n"
        << "index: " << prof.index << "\n"
        << "alpha: " << list_text(prof.alpha) << "\n"
        << "beta+:  " << list_text(prof.beta_plus) << "\n"
        << "beta-:  " << list_text(prof.beta_minus) << "\n"
        << "dynamical dimension: " << prof.delta << "\n"
        << "strangeness (d, a, s): (" << str.d << ", " << str.a << ", " << str.s
        << ")\n"
        << "regular: " << (is_regular(prof) ? "yes" : "no") << "\n"
        << "consistent subspace: dimension " << consistent.dim()
        << ", basis columns " << consistent.basis() << "\n";
  }
  return 0;
}

std::pair<Transform, KroneckerStructure> weierstrass_as_structure(const Pencil& p) {
  WeierstrassForm wf = weierstrass(p);
  KroneckerStructure st;
  st.nilpotent = std::move(wf.nilpotent_sizes);
  st.core_dim = wf.core.rows();
  st.core = std::move(wf.core);
  return {std::move(wf.transform), std::move(st)};
}

int do_canonical(const Options& opt, std::ostream& out) {
  Pencil p = pencil_from_json(load_json_file(opt.path));
  auto [t, st] = opt.weierstrass_only ? weierstrass_as_structure(p)
                                      : kronecker_decompose(p);
  Pencil canon(t.p * p.e * t.q, t.p * p.a * t.q);
  std::vector<std::string> written;
  nlohmann::json j;
  if (opt.json) {
    j["structure"] = structure_to_json(st);
    j["P"] = matrix_to_json(t.p);
    j["Q"] = matrix_to_json(t.q);
    j["canonical"] = pencil_to_json(canon);
  } else {
    out << "pencil: " << p.codomain_dim() << " x " << p.domain_dim() << "\n"
        << "core dimension: " << st.core_dim << "\n"
        << "nilpotent blocks: " << blocks_text(st.nilpotent) << "\n"
        << "column-type blocks: " << blocks_text(st.l_blocks) << "\n"
        << "row-type blocks: " << blocks_text(st.lt_blocks) << "\n";
  }
  if (!opt.out_prefix.empty()) {
    write_out(opt.out_prefix + ".P.json", matrix_to_json(t.p), written);
    write_out(opt.out_prefix + ".Q.json", matrix_to_json(t.q), written);
    write_out(opt.out_prefix + ".canonical.json", pencil_to_json(canon), written);
    write_out(opt.out_prefix + ".structure.json", structure_to_json(st), written);
  }
  report_written(opt, out, written, opt.json ? &j : nullptr);
  if (opt.json) emit(out, j);
  return 0;
}

int do_weak(const Options& opt, std::ostream& out) {
  Pencil p = pencil_from_json(load_json_file(opt.path));
  WeakCanonicalForm wc = weak_canonical(p);
  Pencil canon(wc.e_can, wc.a_can);
  std::vector<std::string> written;
  nlohmann::json j;
  if (opt.json) {
    j["strangeness"] = strangeness_json(wc.invariants);
    j["P"] = matrix_to_json(wc.transform.p);
    j["Q"] = matrix_to_json(wc.transform.q);
    j["R"] = matrix_to_json(*wc.transform.r);
    j["canonical"] = pencil_to_json(canon);
  } else {
    out << "strangeness (d, a, s): (" << wc.invariants.d << ", "
        << wc.invariants.a << ", " << wc.invariants.s << ")\n";
  }
  if (!opt.out_prefix.empty()) {
    write_out(opt.out_prefix + ".P.json", matrix_to_json(wc.transform.p), written);
    write_out(opt.out_prefix + ".Q.json", matrix_to_json(wc.transform.q), written);
    write_out(opt.out_prefix + ".R.json", matrix_to_json(*wc.transform.r), written);
    write_out(opt.out_prefix + ".canonical.json", pencil_to_json(canon), written);
  }
  report_written(opt, out, written, opt.json ? &j : nullptr);
  if (opt.json) emit(out, j);
  return 0;
}

int do_synth(const Options& opt, std::ostream& out) {
  KroneckerStructure st = structure_from_json(load_json_file(opt.path));
  Pencil p = synthesize(st);
  std::optional<Transform> t;
  if (opt.scramble_output) {
    auto [scrambled, transform] = scramble(p, opt.seed);
    p = std::move(scrambled);
    t = std::move(transform);
  }
  std::vector<std::string> written;
  nlohmann::json j;
  if (opt.json) {
    j["pencil"] = pencil_to_json(p);
    if (t) {
      j["P"] = matrix_to_json(t->p);
      j["Q"] = matrix_to_json(t->q);
    }
  }
  if (!opt.out_prefix.empty()) {
    write_out(opt.out_prefix + ".pencil.json", pencil_to_json(p), written);
    if (t) {
      write_out(opt.out_prefix + ".P.json", matrix_to_json(t->p), written);
      write_out(opt.out_prefix + ".Q.json", matrix_to_json(t->q), written);
    }
  } else if (!opt.json) {
    emit(out, pencil_to_json(p));
  }
  report_written(opt, out, written, opt.json ? &j : nullptr);
  if (opt.json) emit(out, j);
  return 0;
}

int do_check(const Options& opt, std::ostream& out, bool json_mode) {
  Pencil p = pencil_from_json(load_json_file(opt.path));
  std::vector<std::pair<std::string, bool>> results;

  DefectProfile prof = full_profile(p);
  auto weight = [](const std::vector<std::size_t>& xs, bool minus_one) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      total += (minus_one ? i : i + 1) * xs[i];
    return total;
  };
  std::size_t dom = prof.delta + weight(prof.alpha, false) +
                    weight(prof.beta_minus, false) + weight(prof.beta_plus, true);
  std::size_t cod = prof.delta + weight(prof.alpha, false) +
                    weight(prof.beta_plus, false) + weight(prof.beta_minus, true);
  results.emplace_back("defect dimension identities",
                       dom == p.domain_dim() && cod == p.codomain_dim());

  results.emplace_back("index matches last nonzero defect",
                       prof.index == index_from_defects(prof));

  results.emplace_back("regularity agrees with the determinant oracle",
                       is_regular(prof) == is_regular_oracle(p));

  DefectProfile dual_prof = full_profile(dual(p));
  auto padded_equal = [](std::vector<std::size_t> a, std::vector<std::size_t> b) {
    std::size_t n = std::max(a.size(), b.size());
    a.resize(n, 0);
    b.resize(n, 0);
    return a == b;
  };
  results.emplace_back("duality swaps the defect lists",
                       padded_equal(dual_prof.alpha, prof.alpha) &&
                           padded_equal(dual_prof.beta_plus, prof.beta_minus) &&
                           padded_equal(dual_prof.beta_minus, prof.beta_plus) &&
                           dual_prof.delta == prof.delta);

  auto [t, st] = kronecker_decompose(p);
  Pencil canon = synthesize(st);
  KroneckerStructure expected = structure_from_profile(prof, std::nullopt);
  results.emplace_back("decompose and reassemble",
                       t.p * p.e * t.q == canon.e && t.p * p.a * t.q == canon.a &&
                           st.nilpotent == expected.nilpotent &&
                           st.l_blocks == expected.l_blocks &&
                           st.lt_blocks == expected.lt_blocks &&
                           st.core_dim == expected.core_dim);

  results.emplace_back("weak form agrees with strangeness",
                       weak_canonical(p).invariants == strangeness(p));

  bool all = std::all_of(results.begin(), results.end(),
                         [](const auto& r) { return r.second; });
  if (json_mode) {
    nlohmann::json j;
    j["pass"] = all;
    j["checks"] = nlohmann::json::array();
    for (const auto& [name, pass] : results)
      j["checks"].push_back({{"name", name}, {"pass", pass}});
    emit(out, j);
  } else {
    for (const auto& [name, pass] : results)
      out << (pass ? "ok   " : "FAIL ") << name << "\n";
  }
  return all ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact analysis and canonical forms of matrix pencils"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* analyze =
      app.add_subcommand("analyze", "defect profile, strangeness, regularity");
  analyze->add_option("file", opt.path, "pencil file")->required();
  analyze->add_flag("--json", opt.json, "machine-readable report");

  CLI::App* canonical =
      app.add_subcommand("canonical", "Kronecker form with explicit transforms");
  canonical->add_option("file", opt.path, "pencil file")->required();
  canonical->add_flag("--json", opt.json, "machine-readable report");
  canonical->add_option("--out", opt.out_prefix, "prefix for output files");
  canonical->add_flag("--weierstrass", opt.weierstrass_only,
                      "require a regular pencil");

  CLI::App* weak =
      app.add_subcommand("weak", "weak-equivalence canonical form");
  weak->add_option("file", opt.path, "pencil file")->required();
  weak->add_flag("--json", opt.json, "machine-readable report");
  weak->add_option("--out", opt.out_prefix, "prefix for output files");

  CLI::App* synth =
      app.add_subcommand("synth", "build a pencil from a structure file");
  synth->add_option("file", opt.path, "structure file")->required();
  synth->add_flag("--json", opt.json, "machine-readable report");
  synth->add_option("--out", opt.out_prefix, "prefix for output files");
  synth->add_option("--seed", opt.seed, "scramble seed");
  synth->add_flag("--scramble", opt.scramble_output, "apply a random equivalence");

  CLI::App* check =
      app.add_subcommand("check", "run the self-consistency suite");
  check->add_option("file", opt.path, "pencil file")->required();
  check->add_flag("--json", opt.json, "machine-readable report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return do_analyze(opt, out);
    if (canonical->parsed()) return do_canonical(opt, out);
    if (weak->parsed()) return do_weak(opt, out);
    if (synth->parsed()) return do_synth(opt, out);
    return do_check(opt, out, opt.json);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pencils
