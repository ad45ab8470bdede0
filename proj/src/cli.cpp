#include "dilhof/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dilhof/analysis.hpp"
#include "dilhof/engine.hpp"
#include "dilhof/errors.hpp"
#include "dilhof/fspec.hpp"
#include "dilhof/parallel.hpp"
#include "dilhof/triangle.hpp"
#include "dilhof/verifiers.hpp"

namespace dilhof::cli {

namespace {

using Json = nlohmann::ordered_json;

struct CliConfig {
  std::string fspec;
  Int n = 0;
  std::string format = "text";
  std::string out_path;
  unsigned threads = 1;
  bool verbose = false;

  std::vector<std::string> lemmas;
  Int cap = kMaxTriangleRows;
  bool report = false;

  std::vector<Int> shifts;
  std::string shift_range;
  bool discover = false;
  Int window = 64;
  Int stride = 97;
  std::size_t candidates = 32;
  Int min_run = kDefaultMinRun;

  Int index = 16;
  Int amount = 1;

  std::string model;
  Int trace_stride = 0;

  std::string which;
  bool full_resolution = false;

  std::string variant = "hofstadter";
  bool with_c = false;
};

// Thrown for bad arguments that CLI11 cannot detect itself.
struct UsageError : Error {
  using Error::Error;
};

struct Died {
  std::string message;
};

Json outcome_json(const ExistenceOutcome& o) {
  Json j;
  j["status"] = o.exists() ? "exists_up_to" : "died_at";
  j["n"] = o.n;
  if (!o.exists()) j["lookup_index"] = o.lookup_index;
  return j;
}

std::string died_message(const ExistenceOutcome& o) {
  return "sequence died at n = " + std::to_string(o.n) + ": lookup index " + std::to_string(o.lookup_index) +
         " is outside the computed range";
}

Json schema(const std::string& command) {
  Json j;
  j["schema"] = "dilhof." + command + "/1";
  return j;
}

void require_format(const CliConfig& c, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (c.format == a) return;
  throw UsageError("format '" + c.format + "' is not supported by this subcommand");
}

std::string join(const std::vector<Int>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + std::to_string(v[k]);
  return s;
}

// ---------------------------------------------------------------------------

std::optional<Died> cmd_compute(const CliConfig& c, std::ostream& out) {
  require_format(c, {"text", "csv", "json"});
  const FSpec spec = parse_fspec(c.fspec);
  const QTrace t = compute_q(spec, c.n);
  if (c.format == "csv") {
    out << "n,f,q\n";
    for (Int n = 1; n <= t.computed(); ++n) out << n << ',' << t.f(n) << ',' << t.q(n) << '\n';
  } else if (c.format == "json") {
    Json j = schema("compute");
    j["fspec"] = to_string(spec);
    j["n_max"] = t.n_max;
    j["outcome"] = outcome_json(t.outcome);
    j["f"] = std::vector<Int>(t.f_values.begin(), t.f_values.begin() + t.computed());
    j["q"] = t.q_values;
    out << j.dump() << '\n';
  } else {
    out << "f = " << to_string(spec) << '\n';
    out << "q = (" << join(t.q_values) << ")\n";
    out << (t.outcome.exists() ? "exists up to n = " + std::to_string(t.outcome.n) : died_message(t.outcome))
        << '\n';
  }
  if (!t.outcome.exists()) return Died{died_message(t.outcome)};
  return std::nullopt;
}

int cmd_verify(const CliConfig& c, std::ostream& out) {
  require_format(c, {"text", "json"});
  const auto results = run_verifiers(c.lemmas.empty() ? std::vector<std::string>{"all"} : c.lemmas, c.n, c.threads);
  bool all_pass = true;
  Json arr = Json::array();
  for (const auto& r : results) {
    all_pass = all_pass && r.passed();
    if (c.format == "json") {
      Json j;
      j["name"] = r.name;
      j["checked_up_to"] = r.checked_up_to;
      j["status"] = r.passed() ? "pass" : "fail";
      if (r.failure)
        j["counterexample"] = {{"index", r.failure->index}, {"expected", r.failure->expected}, {"actual", r.failure->actual}};
      if (!r.note.empty()) j["note"] = r.note;
      if (!r.counts.empty()) j["counts"] = r.counts;
      arr.push_back(std::move(j));
      continue;
    }
    out << (r.passed() ? "PASS " : "FAIL ") << r.name << " (N = " << r.checked_up_to << ")";
    if (r.failure)
      out << ": first mismatch at n = " << r.failure->index << ", expected " << r.failure->expected << ", got "
          << r.failure->actual;
    if (!r.note.empty()) out << " [" << r.note << "]";
    for (const auto& [k, v] : r.counts) out << ' ' << k << '=' << v;
    out << '\n';
  }
  if (c.format == "json") {
    Json j = schema("verify");
    j["all_passed"] = all_pass;
    j["results"] = std::move(arr);
    out << j.dump() << '\n';
  }
  return all_pass ? kOk : kVerifierFailed;
}

std::string cells_text(const std::vector<CellRef>& cells) {
  std::string s;
  for (const auto& cell : cells) s += " (" + std::to_string(cell.i) + "," + std::to_string(cell.n) + ")";
  return s.empty() ? " none" : s;
}

int cmd_triangle(const CliConfig& c, std::ostream& out) {
  require_format(c, {"text", "json"});
  if (c.n < 1) throw UsageError("triangle needs --n >= 1");
  const TriangleTable table = build_triangle(c.n, c.threads, c.cap);
  const ContainmentReport containment = check_containment(table);
  const MinReport minimum = check_min(table);
  const bool ok = containment.ok() && minimum.ok();
  if (c.format == "json") {
    Json j = Json::parse(render_triangle_json(table));
    auto cells_json = [](const std::vector<CellRef>& cells) {
      Json a = Json::array();
      for (const auto& cell : cells) a.push_back({{"n", cell.n}, {"i", cell.i}});
      return a;
    };
    j["checks"] = {{"containment_violations", cells_json(containment.violations)},
                   {"strict_cells", cells_json(containment.strict)},
                   {"rows_not_bounded", containment.rows_not_bounded},
                   {"t1_mismatch", containment.t1_mismatch},
                   {"bad_predecessors", cells_json(containment.bad_predecessors)},
                   {"wrong_minimum", cells_json(minimum.wrong_minimum)},
                   {"wrong_witness", cells_json(minimum.wrong_witness)},
                   {"passed", ok}};
    out << j.dump() << '\n';
  } else {
    out << render_triangle_text(table);
    if (c.report) {
      out << "\ncontainment T in U violations:" << cells_text(containment.violations) << '\n';
      out << "strict containment cells:" << cells_text(containment.strict) << '\n';
      out << "rows with union outside {1:n}: " << (containment.rows_not_bounded.empty() ? "none" : join(containment.rows_not_bounded)) << '\n';
      out << "rows where T_{1,n} != {2:w(n)}: " << (containment.t1_mismatch.empty() ? "none" : join(containment.t1_mismatch)) << '\n';
      out << "min T_{i,n} != i+1:" << cells_text(minimum.wrong_minimum) << '\n';
      out << "witness failures:" << cells_text(minimum.wrong_witness) << '\n';
    }
  }
  return ok ? kOk : kVerifierFailed;
}

std::optional<Died> cmd_scan(const CliConfig& c, std::ostream& out, std::ostream& err) {
  require_format(c, {"text", "csv", "json"});
  const FSpec spec = parse_fspec(c.fspec);
  const QTrace t = compute_q(spec, c.n);
  if (!t.outcome.exists()) return Died{died_message(t.outcome)};

  std::vector<Int> shifts = c.shifts;
  if (!c.shift_range.empty()) {
    const auto colon = c.shift_range.find(':');
    if (colon == std::string::npos) throw UsageError("--shift-range expects LO:HI");
    const Int lo = std::stoll(c.shift_range.substr(0, colon));
    const Int hi = std::stoll(c.shift_range.substr(colon + 1));
    if (lo < 1 || hi < lo) throw UsageError("--shift-range expects 1 <= LO <= HI");
    for (Int s = lo; s <= hi; ++s) shifts.push_back(s);
  }
  if (c.discover) {
    const auto proposed = propose_shifts(t, c.window, c.stride, c.candidates);
    if (c.verbose) err << "discovery proposed " << proposed.size() << " shifts\n";
    shifts.insert(shifts.end(), proposed.begin(), proposed.end());
  }
  if (shifts.empty()) throw UsageError("scan-selfsim needs --shifts, --shift-range or --discover");

  const auto matches = scan_self_similarity(t, shifts, c.min_run, c.threads);
  if (c.format == "csv") {
    out << "shift,delta,lo,hi\n";
    for (const auto& m : matches) out << m.shift << ',' << m.delta << ',' << m.lo << ',' << m.hi << '\n';
  } else if (c.format == "json") {
    Json j = schema("scan-selfsim");
    j["fspec"] = to_string(spec);
    j["n_max"] = c.n;
    j["min_run"] = c.min_run;
    Json arr = Json::array();
    for (const auto& m : matches) arr.push_back({{"shift", m.shift}, {"delta", m.delta}, {"lo", m.lo}, {"hi", m.hi}});
    j["matches"] = std::move(arr);
    out << j.dump() << '\n';
  } else {
    for (const auto& m : matches)
      out << "q(i+" << m.shift << ") - q(i) = " << m.delta << " for i in {" << m.lo << ":" << m.hi << "} (length "
          << m.length() << ")\n";
    if (matches.empty()) out << "no runs of length >= " << c.min_run << '\n';
  }
  return std::nullopt;
}

std::optional<Died> cmd_perturb(const CliConfig& c, std::ostream& out) {
  require_format(c, {"text", "csv", "json"});
  const FSpec spec = parse_fspec(c.fspec);
  const PerturbationTrace p = perturb_compare(spec, c.index, c.amount, c.n);
  if (c.format == "csv") {
    out << "n,diff\n";
    for (Int n = 1; n <= static_cast<Int>(p.diff.size()); ++n) out << n << ',' << p.at(n) << '\n';
  } else if (c.format == "json") {
    Json j = schema("perturb");
    j["base_fspec"] = p.base_fspec;
    j["index"] = p.perturb_index;
    j["amount"] = p.amount;
    j["n_max"] = p.n_max;
    j["base_outcome"] = outcome_json(p.base_outcome);
    j["perturbed_outcome"] = outcome_json(p.perturbed_outcome);
    Json zr = Json::array();
    for (const auto& [lo, hi] : p.zero_regions) zr.push_back({lo, hi});
    j["zero_regions"] = std::move(zr);
    j["diff"] = p.diff;
    out << j.dump() << '\n';
  } else {
    out << "base f = " << p.base_fspec << ", perturbed by " << p.amount << " at n = " << p.perturb_index << '\n';
    Int nonzero = 0;
    for (const Int d : p.diff) nonzero += d != 0;
    out << "compared " << p.diff.size() << " terms, " << nonzero << " differ, " << p.zero_regions.size()
        << " maximal zero regions\n";
    for (const auto& [lo, hi] : p.zero_regions) out << "  zero on {" << lo << ":" << hi << "}\n";
  }
  if (!p.base_outcome.exists()) return Died{"base " + died_message(p.base_outcome)};
  if (!p.perturbed_outcome.exists()) return Died{"perturbed " + died_message(p.perturbed_outcome)};
  return std::nullopt;
}

int cmd_approx(const CliConfig& c, std::ostream& out) {
  require_format(c, {"text", "csv", "json"});
  const FSpec spec = parse_fspec(c.fspec);
  const ApproxModel model = parse_model(c.model);
  const QTrace t = compute_q(spec, c.n);
  if (!t.outcome.exists()) throw Died{died_message(t.outcome)};
  const ApproximationReport r = approx_error(spec, model, c.n, c.trace_stride);
  if (c.format == "csv") {
    out << "n,error\n";
    char buf[64];
    for (const auto& [n, e] : r.error_trace) {
      std::snprintf(buf, sizeof buf, "%.12g", e);
      out << n << ',' << buf << '\n';
    }
  } else if (c.format == "json") {
    Json j = schema("approx");
    j["fspec"] = r.fspec;
    j["n_max"] = r.n_max;
    j["model"] = r.model.describe();
    j["max_abs_error"] = r.max_abs_error;
    j["max_abs_at"] = r.max_abs_at;
    j["min_signed_error"] = r.min_signed_error;
    j["max_signed_error"] = r.max_signed_error;
    j["q_at_n_max"] = r.q_at_n_max;
    out << j.dump() << '\n';
  } else {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "f = %s, model q ~ %s, n <= %lld\nmax |q - model| = %.6f at n = %lld\nsigned error in [%.6f, %.6f]\n"
                  "q(%lld) = %lld\n",
                  r.fspec.c_str(), r.model.describe().c_str(), static_cast<long long>(r.n_max), r.max_abs_error,
                  static_cast<long long>(r.max_abs_at), r.min_signed_error, r.max_signed_error,
                  static_cast<long long>(r.n_max), static_cast<long long>(r.q_at_n_max));
    out << buf;
  }
  return kOk;
}

int cmd_export(const CliConfig& c, std::ostream& out) {
  require_format(c, {"text", "csv", "json"});
  const FigureKind kind = parse_figure_kind(c.which);
  const DataTable table = figure_data(kind, c.n, c.full_resolution);
  if (c.format == "json")
    write_json(out, table, "dilhof.figure/1");
  else
    write_csv(out, table);
  return kOk;
}

std::optional<Died> cmd_hofstadter(const CliConfig& c, std::ostream& out) {
  require_format(c, {"text", "csv", "json"});
  TwoTermSpec spec;
  if (c.variant == "hofstadter")
    spec = TwoTermSpec::hofstadter();
  else if (c.variant == "tanny")
    spec = TwoTermSpec::tanny();
  else if (c.variant == "v")
    spec = TwoTermSpec::v_variant();
  else if (c.variant == "quasi")
    spec = TwoTermSpec::quasi_polynomial_r();
  else
    throw UsageError("unknown --variant '" + c.variant + "' (hofstadter, tanny, v, quasi)");
  const Int n_max = c.n > 0 ? c.n : kDefaultTwoTermVerifyN;
  const QTrace t = compute_two_term(spec, n_max);

  std::vector<Int> c_prefix;
  Int c_jump_at = 0;
  if (c.with_c) {
    if (c.variant != "hofstadter") throw UsageError("--c applies to the hofstadter variant only");
    if (!t.outcome.exists()) return Died{died_message(t.outcome)};
    const auto cv = compute_c(std::max<Int>(n_max, 3));
    for (std::size_t k = 0; k < cv.size(); ++k) {
      if (k < 20) c_prefix.push_back(cv[k]);
      if (c_jump_at == 0 && k + 1 < cv.size()) {
        const Int d = cv[k + 1] - cv[k];
        if (d != 0 && d != 1) c_jump_at = static_cast<Int>(k) + 3;
      }
    }
  }

  const Int shown = std::min<Int>(t.computed(), 20);
  const std::vector<Int> head(t.q_values.begin(), t.q_values.begin() + shown);
  if (c.format == "csv") {
    out << "n,q\n";
    for (Int n = t.first_index; n <= t.last_index(); ++n) out << n << ',' << t.q(n) << '\n';
  } else if (c.format == "json") {
    Json j = schema("hofstadter");
    j["variant"] = c.variant;
    j["first_index"] = t.first_index;
    j["n_max"] = n_max;
    j["outcome"] = outcome_json(t.outcome);
    j["head"] = head;
    if (c.with_c) {
      j["c_prefix"] = c_prefix;
      j["c_first_jump_n"] = c_jump_at;
    }
    out << j.dump() << '\n';
  } else {
    out << c.variant << ": "
        << (t.outcome.exists() ? "exists up to n = " + std::to_string(t.outcome.n) : died_message(t.outcome))
        << '\n';
    out << "first terms from n = " << t.first_index << ": " << join(head, ", ") << '\n';
    if (c.with_c) {
      out << "c(3..) = " << join(c_prefix, ", ") << '\n';
      if (c_jump_at)
        out << "c(n+1) - c(n) leaves {0, 1} first at n = " << c_jump_at << '\n';
      else
        out << "c(n+1) - c(n) stays in {0, 1} up to n = " << n_max << '\n';
    }
  }
  if (!t.outcome.exists()) return Died{died_message(t.outcome)};
  return std::nullopt;
}

void add_common(CLI::App* sub, CliConfig& c, bool needs_n) {
  auto* n = sub->add_option("--n", c.n, "Number of terms / rows");
  if (needs_n) n->required();
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  sub->add_option("--out", c.out_path, "Write data to this file instead of standard output");
  sub->add_option("--threads", c.threads, "Worker threads (default: $DILHOF_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--verbose", c.verbose, "Progress on standard error");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig c;
  c.threads = default_thread_count();

  CLI::App app{"Diluted Hofstadter sequences q(n) = q(n - q(n-1)) + f(n): compute, verify, analyse", "dilhof"};
  app.set_config("--config", "", "Read option defaults from a TOML/INI file (flags win)");
  app.require_subcommand(1);
  app.footer(std::string(fspec_grammar_help()));

  auto* compute = app.add_subcommand("compute", "Compute f and q up to --n");
  compute->add_option("--f", c.fspec, "f-spec")->required();
  add_common(compute, c, true);

  auto* verify = app.add_subcommand("verify", "Check closed forms against the engine");
  verify->add_option("--lemma", c.lemmas, "Verifier name or 'all' (repeatable)");
  add_common(verify, c, false);

  auto* triangle = app.add_subcommand("triangle", "Exhaustive T_{i,n} table");
  triangle->add_option("--cap", c.cap, "Row cap for the enumeration");
  triangle->add_flag("--report", c.report, "Append containment and minimum checks to text output");
  add_common(triangle, c, true);

  auto* scan = app.add_subcommand("scan-selfsim", "Find q(i+s) - q(i) = const runs");
  scan->add_option("--f", c.fspec, "f-spec")->required();
  scan->add_option("--shifts", c.shifts, "Shifts to scan")->delimiter(',');
  scan->add_option("--shift-range", c.shift_range, "Scan every shift in LO:HI");
  scan->add_flag("--discover", c.discover, "Propose shifts from repeated difference windows");
  scan->add_option("--window", c.window, "Discovery window length");
  scan->add_option("--stride", c.stride, "Discovery anchor stride");
  scan->add_option("--candidates", c.candidates, "Discovery candidate limit");
  scan->add_option("--min-run", c.min_run, "Minimum run length");
  add_common(scan, c, true);

  auto* perturb = app.add_subcommand("perturb", "Compare Q(f) with Q(f + A delta(n - I))");
  perturb->add_option("--f", c.fspec, "Base f-spec")->required();
  perturb->add_option("--index", c.index, "Perturbed index I");
  perturb->add_option("--amount", c.amount, "Perturbation amount A");
  add_common(perturb, c, true);

  auto* approx = app.add_subcommand("approx", "Error of q against an asymptotic model");
  approx->add_option("--f", c.fspec, "f-spec")->required();
  approx->add_option("--model", c.model, "sqrt-alpha:X | const-limit:A | power:A,P,B")->required();
  approx->add_option("--trace-stride", c.trace_stride, "Keep every k-th error for CSV output");
  add_common(approx, c, true);

  auto* exportf = app.add_subcommand("export-figure", "Write plot data (fig2, ascon, fig3)");
  exportf->add_option("--which", c.which, "fig2 | ascon | fig3")->required();
  exportf->add_flag("--full-resolution", c.full_resolution, "Do not downsample");
  add_common(exportf, c, false);

  auto* hof = app.add_subcommand("hofstadter", "Two-nested-term recursions and c(n)");
  hof->add_option("--variant", c.variant, "hofstadter | tanny | v | quasi");
  hof->add_flag("--c", c.with_c, "Also compute c(n) = q_h(n - q_h(n-2))");
  add_common(hof, c, false);

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("dilhof");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.out_path.empty()) {
    file.open(c.out_path);
    if (!file) {
      err << "error: cannot open '" << c.out_path << "' for writing\n";
      return kUsage;
    }
    sink = &file;
  }

  const auto started = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    std::optional<Died> died;
    if (*compute)
      died = cmd_compute(c, *sink);
    else if (*verify)
      code = cmd_verify(c, *sink);
    else if (*triangle)
      code = cmd_triangle(c, *sink);
    else if (*scan)
      died = cmd_scan(c, *sink, err);
    else if (*perturb)
      died = cmd_perturb(c, *sink);
    else if (*approx)
      code = cmd_approx(c, *sink);
    else if (*exportf)
      code = cmd_export(c, *sink);
    else if (*hof)
      died = cmd_hofstadter(c, *sink);
    if (died) {
      err << died->message << '\n';
      code = kDied;
    }
  } catch (const Died& d) {
    err << d.message << '\n';
    code = kDied;
  } catch (const InvalidFSpec& e) {
    err << "error: " << e.what() << "\n\n" << fspec_grammar_help();
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (c.verbose) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    err << "done in " << elapsed.count() << " s\n";
  }
  return code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace dilhof::cli
