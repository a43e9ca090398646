#include "dp5/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dp5/bundles.hpp"
#include "dp5/certified.hpp"
#include "dp5/constants.hpp"
#include "dp5/count.hpp"
#include "dp5/motivic.hpp"
#include "dp5/picard.hpp"

namespace dp5::cli {

using Json = nlohmann::ordered_json;

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime:
    case ErrorCode::TooLarge:
    case ErrorCode::ParseError:
    case ErrorCode::NotInEffDual:
    case ErrorCode::InconsistentPairings:
    case ErrorCode::InvalidWeilData:
    case ErrorCode::NegativePointCount:
    case ErrorCode::Diverges:
    case ErrorCode::PreconditionViolated:
      return exit_code::kInvalidInput;
    case ErrorCode::BudgetExceeded:
    case ErrorCode::TargetUnreachable:
      return exit_code::kBudget;
    default:
      return exit_code::kInternal;
  }
}

std::uint64_t budget_from_env() {
  const char* raw = std::getenv("DP5_BUDGET");
  if (raw == nullptr || *raw == '\0') return count::kDefaultBudget;
  const std::string text(raw);
  if (text.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::ParseError, "DP5_BUDGET must be a nonnegative integer, got '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::ParseError, "DP5_BUDGET out of range: " + text);
  }
}

namespace {

using Clock = std::chrono::steady_clock;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Json run_record(std::string_view command, Json params, Json payload, double wall) {
  Json r;
  r["command"] = command;
  r["params"] = std::move(params);
  r["version"] = kVersion;
  r["timestamp"] = utc_timestamp();
  r["payload"] = std::move(payload);
  r["wall_seconds"] = wall;
  return r;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::PreconditionViolated, "cannot open '" + path + "' for writing");
  f << contents;
}

gf::FieldCtx field_of(std::int64_t q) {
  if (q < 2 || q > static_cast<std::int64_t>(gf::kMaxFieldOrder)) {
    throw Error(ErrorCode::TooLarge, "field order " + std::to_string(q) + " outside 2.." + std::to_string(gf::kMaxFieldOrder));
  }
  return gf::FieldCtx::of_order(static_cast<std::uint32_t>(q));
}

picard::CurveClass class_arg(const std::string& cls, const std::string& pairings) {
  if (cls.empty() == pairings.empty()) {
    throw Error(ErrorCode::ParseError, "give exactly one of --class and --pairings");
  }
  return picard::parse_class(cls.empty() ? "pairings=" + pairings : cls);
}

Json degree_json(const picard::DegreeData& d) {
  Json j = Json::object();
  for (int l = 0; l < picard::kLineCount; ++l) j[std::string(picard::line_name(l))] = d.by_line[static_cast<std::size_t>(l)];
  return j;
}

// "1e-12", "0.001", "5e-7" as an exact rational.
mpq_class parse_precision(const std::string& text) {
  static const std::regex pattern(R"(^(\d+)(?:\.(\d+))?(?:[eE]([+-]?\d+))?$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw Error(ErrorCode::ParseError, "cannot parse precision '" + text + "'");
  const std::string frac = m[2].matched ? m[2].str() : "";
  mpz_class digits(m[1].str() + frac);
  int exponent = (m[3].matched ? std::stoi(m[3].str()) : 0) - static_cast<int>(frac.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exponent)));
  mpq_class value = exponent >= 0 ? mpq_class(digits * scale) : mpq_class(digits, scale);
  value.canonicalize();
  if (value <= 0) throw Error(ErrorCode::ParseError, "precision must be positive");
  return value;
}

constants::CurveZeta load_curve(const std::string& spec, std::optional<std::int64_t> q) {
  if (spec == "p1") {
    if (!q) throw Error(ErrorCode::ParseError, "--q is required with --curve p1");
    return constants::CurveZeta::projective_line(*q);
  }
  std::ifstream f(spec);
  if (!f) throw Error(ErrorCode::ParseError, "cannot read curve file '" + spec + "'");
  Json j;
  try {
    j = Json::parse(f);
    const auto file_q = j.at("q").get<std::int64_t>();
    if (q && *q != file_q) {
      throw Error(ErrorCode::ParseError, "--q " + std::to_string(*q) + " disagrees with curve file q " + std::to_string(file_q));
    }
    return constants::CurveZeta::from_weil(file_q, j.at("g").get<int>(), j.at("weil").get<std::vector<std::int64_t>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed curve file: ") + e.what());
  }
}

Json interval_json(const constants::ConstantEstimate& c, std::string_view method) {
  Json j;
  j["method"] = method;
  j["terms"] = c.terms;
  j["lo"] = certified::format_decimal(c.value.lo(), 25);
  j["hi"] = certified::format_decimal(c.value.hi(), 25);
  j["mid"] = certified::format_decimal(c.value.mid(), 20);
  j["rad"] = certified::format_decimal(c.value.rad(), 3);
  return j;
}

std::vector<picard::CurveClass> read_classes(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot read class file '" + path + "'");
  std::vector<picard::CurveClass> out;
  std::string line;
  while (std::getline(f, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(picard::parse_class(line.substr(first, last - first + 1)));
  }
  return out;
}

struct CheckLine {
  std::string suite;
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<CheckLine> verify_identities() {
  std::vector<CheckLine> out;
  for (const auto& c : motivic::local_identity_checks(1)) out.push_back({"identities", c.name, c.passed, c.detail});

  const auto f = motivic::local_factor_coefficients();
  const auto e = motivic::witt_exponents(f, 24);
  out.push_back({"identities", "exponents e1 = 0, e2 = 14, e3 = -35", e[1] == 0 && e[2] == 14 && e[3] == -35,
                 e[1].get_str() + "," + e[2].get_str() + "," + e[3].get_str()});

  motivic::SeriesL product = motivic::SeriesL::one(25);
  for (int k = 1; k <= 24; ++k) product = product * motivic::SeriesL::one_minus_power(25, k).pow(e[static_cast<std::size_t>(k)]);
  out.push_back({"identities", "prod (1 - x^k)^e_k = F mod x^25", product == motivic::SeriesL(25, f), product.to_string()});
  return out;
}

std::vector<CheckLine> verify_bundles(std::uint64_t budget) {
  std::vector<CheckLine> out;
  const auto minus_k = picard::CurveClass::anticanonical();
  for (std::int64_t q : {2, 3}) {
    for (bool zero : {true, false}) {
      const auto ctx = field_of(q);
      const auto cls = q == 2 ? minus_k * 2 : minus_k;
      const auto r = bundles::hn_statistics(ctx, cls, 50, 7, zero, budget);
      const std::string where = "q=" + std::to_string(q) + " class " + cls.to_string() + (zero ? " D=E=0" : " D,E random");
      out.push_back({"bundles", "splitting sum = degree, " + where, r.samples > 0 && r.degree_mismatches == 0,
                     std::to_string(r.degree_mismatches) + " mismatches in " + std::to_string(r.samples)});
      out.push_back({"bundles", "h0 - h1 = degree + 3, " + where, r.riemann_roch_mismatches == 0,
                     std::to_string(r.riemann_roch_mismatches) + " mismatches"});
      out.push_back({"bundles", "h1 > 0 implies e3 <= -2, " + where, r.slope_violations == 0,
                     std::to_string(r.h1_positive) + " with h1 > 0, " + std::to_string(r.slope_violations) + " violations"});
    }
  }
  return out;
}

std::vector<CheckLine> verify_counts(std::uint64_t budget) {
  std::vector<CheckLine> out;
  count::CountOptions opts;
  opts.budget = budget;
  for (std::int64_t q : {2, 3, 4, 5}) {
    const auto r = count::count_fast(field_of(q), picard::CurveClass{}, opts);
    const mpz_class want = (q - 2) * (q - 3);
    out.push_back({"counts", "zero class at q=" + std::to_string(q) + " equals (q-2)(q-3)", r.hom_count == want,
                   r.hom_count.get_str()});
  }
  const auto ctx = field_of(2);
  for (const auto& cls : {picard::CurveClass::hyperplane(), picard::CurveClass::anticanonical(),
                          picard::CurveClass::hyperplane() * 2 - picard::CurveClass::exceptional(1)}) {
    const auto naive = count::count_naive(ctx, cls, budget);
    const auto fast = count::count_fast(ctx, cls, opts);
    out.push_back({"counts", "naive = fast at q=2 for " + cls.to_string(), naive.m_count == fast.m_count,
                   naive.m_count.get_str() + " vs " + fast.m_count.get_str()});
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counts morphisms from P^1 to the split quintic del Pezzo surface and evaluates the predicted constants"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::optional<std::int64_t> q;
  std::string cls, pairings, out_path, format = "json", method = "fast";
  unsigned workers = 1;

  auto* count_cmd = app.add_subcommand("count", "Count morphisms of a given class");
  count_cmd->add_option("--q", q, "Field order")->required();
  count_cmd->add_option("--class", cls, "Class as a,c1,c2,c3,c4");
  count_cmd->add_option("--pairings", pairings, "Ten line pairings d1,d2,d3,d4,d12,d13,d14,d23,d24,d34");
  count_cmd->add_option("--method", method, "naive or fast")->check(CLI::IsMember({"naive", "fast"}));
  count_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  count_cmd->add_option("--out", out_path, "Write the run record here");
  count_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::string curve = "p1", prec = "1e-12", const_method = "direct";
  auto* const_cmd = app.add_subcommand("constant", "Certified leading constant");
  const_cmd->add_option("--q", q, "Field order");
  const_cmd->add_option("--curve", curve, "p1 or a JSON file {q, g, weil}");
  const_cmd->add_option("--prec", prec, "Target radius, e.g. 1e-12");
  const_cmd->add_option("--method", const_method, "direct, zeta or both")->check(CLI::IsMember({"direct", "zeta", "both"}));
  const_cmd->add_option("--out", out_path, "Write the run record here");

  int trunc = motivic::kDefaultTruncation;
  std::optional<std::int64_t> specialize;
  auto* motivic_cmd = app.add_subcommand("motivic", "Motivic constant as a series in u = 1/L");
  motivic_cmd->add_option("--trunc", trunc, "Truncation order")->check(CLI::PositiveNumber);
  motivic_cmd->add_option("--specialize", specialize, "Evaluate at u = 1/q");

  auto* chamber_cmd = app.add_subcommand("chamber", "Chamber normalization of a class");
  chamber_cmd->add_option("--class", cls, "Class as a,c1,c2,c3,c4");
  chamber_cmd->add_option("--pairings", pairings, "Ten line pairings");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "Run invariant suites");
  verify_cmd->add_option("--suite", suite, "identities, bundles, counts or all")
      ->check(CLI::IsMember({"identities", "bundles", "counts", "all"}));

  std::string classes_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Count a list of classes and compare with the constant");
  sweep_cmd->add_option("--q", q, "Field order")->required();
  sweep_cmd->add_option("--classes", classes_path, "File with one class per line")->required();
  sweep_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  std::int64_t samples = 200;
  std::uint64_t seed = 1;
  bool zero_stratum = false;
  auto* hn_cmd = app.add_subcommand("hn", "Splitting-type statistics of sampled congruence bundles");
  hn_cmd->add_option("--q", q, "Field order")->required();
  hn_cmd->add_option("--class", cls, "Class as a,c1,c2,c3,c4");
  hn_cmd->add_option("--pairings", pairings, "Ten line pairings");
  hn_cmd->add_option("--samples", samples, "Number of samples")->check(CLI::PositiveNumber);
  hn_cmd->add_option("--seed", seed, "Random seed");
  hn_cmd->add_flag("--zero-stratum", zero_stratum, "Restrict to D = E = 0");
  hn_cmd->add_option("--out", out_path, "Write the run record here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? exit_code::kOk : exit_code::kInvalidInput;
  }

  const auto t0 = Clock::now();
  try {
    const std::uint64_t budget = budget_from_env();

    if (count_cmd->parsed()) {
      const auto ctx = field_of(*q);
      const auto c = class_arg(cls, pairings);
      count::CountResult r;
      if (method == "naive") {
        r = count::count_naive(ctx, c, budget);
      } else {
        count::CountOptions opts;
        opts.workers = workers;
        opts.budget = budget;
        r = count::count_fast(ctx, c, opts);
      }
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), ctx.q(), static_cast<unsigned long>(r.data.d + 2));
      const std::string ratio = certified::format_decimal(mpq_class(r.hom_count, scale), 17);
      out << "hom_count " << r.hom_count.get_str() << "\nratio " << ratio << "\n";
      if (!out_path.empty()) {
        if (format == "csv") {
          std::ostringstream s;
          s << "class,q,method,d,m_count,hom_count,ratio\n"
            << '"' << c.to_string() << "\"," << ctx.q() << ',' << count::to_string(r.method) << ',' << r.data.d << ','
            << r.m_count.get_str() << ',' << r.hom_count.get_str() << ',' << ratio << '\n';
          write_file(out_path, s.str());
        } else {
          Json params{{"q", *q}, {"class", c.to_string()}, {"method", method}, {"workers", workers}, {"budget", budget}};
          Json payload{{"class", c.to_string()},     {"d", r.data.d},
                       {"degree_data", degree_json(r.data)}, {"m_count", r.m_count.get_str()},
                       {"hom_count", r.hom_count.get_str()}, {"ratio", ratio}};
          write_file(out_path, run_record("count", params, payload, seconds_since(t0)).dump(2) + "\n");
        }
      }
      return exit_code::kOk;
    }

    if (const_cmd->parsed()) {
      const auto zeta = load_curve(curve, q);
      const mpq_class target = parse_precision(prec);
      std::optional<constants::ConstantEstimate> direct, accelerated;
      if (const_method != "zeta") direct = constants::leading_constant_direct(zeta, target);
      if (const_method != "direct") accelerated = constants::leading_constant_zeta_target(zeta, target);
      out << "q " << zeta.q() << " genus " << zeta.genus() << " class_number " << zeta.class_number().get_str() << "\n";
      if (direct) out << "direct " << direct->value.to_string(20) << " (N = " << direct->terms << ")\n";
      if (accelerated) out << "zeta   " << accelerated->value.to_string(20) << " (K = " << accelerated->terms << ")\n";
      const bool agree = !(direct && accelerated) || direct->value.overlaps(accelerated->value);
      if (!out_path.empty()) {
        Json params{{"q", zeta.q()}, {"curve", curve}, {"prec", prec}, {"method", const_method}};
        Json payload{{"genus", zeta.genus()}, {"class_number", zeta.class_number().get_str()}, {"estimates", Json::array()}};
        if (direct) payload["estimates"].push_back(interval_json(*direct, "direct"));
        if (accelerated) payload["estimates"].push_back(interval_json(*accelerated, "zeta"));
        if (direct && accelerated) payload["overlap"] = agree;
        write_file(out_path, run_record("constant", params, payload, seconds_since(t0)).dump(2) + "\n");
      }
      if (direct && accelerated) {
        out << (agree ? "intervals overlap" : "intervals DISJOINT") << "\n";
        if (!agree) {
          err << "error: direct and zeta methods disagree beyond their certified radii\n";
          return exit_code::kDisagreement;
        }
      }
      return exit_code::kOk;
    }

    if (motivic_cmd->parsed()) {
      const auto s = motivic::motivic_constant(trunc);
      out << s.to_string() << "\n";
      Json coeffs = Json::array();
      for (const auto& c : s.coeffs()) coeffs.push_back(c.get_str());
      out << coeffs.dump() << "\n";
      if (specialize) {
        if (*specialize < 2) throw Error(ErrorCode::PreconditionViolated, "--specialize needs q >= 2");
        const mpq_class v = s.specialize(mpq_class(1, static_cast<unsigned long>(*specialize)));
        out << "at u = 1/" << *specialize << ": " << v.get_str() << "\n"
            << "approx " << certified::format_decimal(v, 20) << "\n";
      }
      return exit_code::kOk;
    }

    if (chamber_cmd->parsed()) {
      const auto c = class_arg(cls, pairings);
      const auto ch = picard::chamber_normalize(c);
      out << "chamber " << ch.id << "\nrelabeling";
      for (int x : ch.relabeling) out << ' ' << x;
      out << "\nnormalized";
      for (int l = 0; l < picard::kLineCount; ++l) {
        out << ' ' << picard::line_name(l) << '=' << ch.normalized.by_line[static_cast<std::size_t>(l)];
      }
      out << "\nd " << ch.normalized.d << "\nboundary_distance " << picard::boundary_distance(c) << "\n";
      return exit_code::kOk;
    }

    if (verify_cmd->parsed()) {
      std::vector<CheckLine> lines;
      auto take = [&](std::vector<CheckLine> more) { lines.insert(lines.end(), more.begin(), more.end()); };
      if (suite == "identities" || suite == "all") take(verify_identities());
      if (suite == "bundles" || suite == "all") take(verify_bundles(budget));
      if (suite == "counts" || suite == "all") take(verify_counts(budget));
      bool all = true;
      for (const auto& l : lines) {
        out << (l.passed ? "PASS " : "FAIL ") << l.suite << ": " << l.name << " [" << l.detail << "]\n";
        all = all && l.passed;
      }
      return all ? exit_code::kOk : exit_code::kInternal;
    }

    if (sweep_cmd->parsed()) {
      const auto ctx = field_of(*q);
      count::CountOptions opts;
      opts.workers = workers;
      opts.budget = budget;
      const auto rows = count::sweep(ctx, read_classes(classes_path), opts);
      std::ostringstream csv;
      count::write_sweep_csv(csv, rows);
      if (out_path.empty()) {
        out << csv.str();
      } else {
        write_file(out_path, csv.str());
      }
      return exit_code::kOk;
    }

    if (hn_cmd->parsed()) {
      const auto ctx = field_of(*q);
      const auto c = class_arg(cls, pairings);
      const auto r = bundles::hn_statistics(ctx, c, samples, seed, zero_stratum, budget);
      out << "samples " << r.samples << "\nh1_positive " << r.h1_positive << "\n";
      Json hist = Json::object();
      for (const auto& [k, n] : r.e1_excess_thirds) {
        out << "e1 - slope = " << k << "/3: " << n << "\n";
        hist[std::to_string(k)] = n;
      }
      if (!out_path.empty()) {
        Json params{{"q", *q}, {"class", c.to_string()}, {"samples", samples}, {"seed", seed}, {"zero_stratum", zero_stratum}};
        Json payload{{"samples", r.samples},
                     {"e1_excess_thirds", hist},
                     {"h1_positive", r.h1_positive},
                     {"slope_violations", r.slope_violations},
                     {"degree_mismatches", r.degree_mismatches},
                     {"riemann_roch_mismatches", r.riemann_roch_mismatches}};
        write_file(out_path, run_record("hn", params, payload, seconds_since(t0)).dump(2) + "\n");
      }
      return exit_code::kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_status(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInternal;
  }
  return exit_code::kInternal;
}

}  // namespace dp5::cli
