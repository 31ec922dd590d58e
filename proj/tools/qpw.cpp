#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qpw/catalog.hpp"
#include "qpw/classifier.hpp"
#include "qpw/elliptic_report.hpp"
#include "qpw/errors.hpp"
#include "qpw/series_lab.hpp"

namespace {

using namespace qpw;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;
constexpr int kExitTolerance = 3;

struct InternalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string steps;
  int kmax = -1;
  std::string z0;
  unsigned prec = kDefaultPrecisionBits;
  int nmax = 15;
  std::string out;
  bool json = false;
  bool fixed_precision = false;
  int order = -1;
  int degree = -1;
  int deg_t = -1;
  int deg_z = -1;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open " + path + " for writing");
  f << content;
  if (!f) throw InvalidArgument("write to " + path + " failed");
}

std::string rf(const Poly3& p) { return RatFunc3(p).to_string(); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_census(const Options& o) {
  const CatalogFile catalog = build_catalog(o.nmax);
  const std::string text = serialize(catalog);
  if (parse_catalog(text) != catalog) throw InternalFailure("catalog does not round-trip");
  for (const ClassificationRecord& r : catalog.models) {
    if (r.order_H.finite && !r.norm_ok) throw InternalFailure("N(f) != 1 for " + r.steps.to_string());
    if (r.nature != Nature::NotCovered && !r.order_H.finite) {
      throw InternalFailure("verdict without a finite group for " + r.steps.to_string());
    }
  }

  if (o.json) {
    std::cout << text;
  } else {
    const CatalogSummary s = summarize(catalog);
    for (const std::string& line : summary_lines(s)) std::cout << line << "\n";
    std::map<std::string, std::map<Nature, int>> table;
    for (const ClassificationRecord& r : catalog.models) {
      const std::string row = r.order_H.finite ? "order " + std::to_string(r.order_H.value) : "exceeds bound";
      ++table[row][r.nature];
    }
    std::cout << "\n" << std::left << std::setw(16) << "group" << std::setw(12) << "algebraic" << std::setw(26)
              << "holonomic-nonalgebraic" << "not-covered\n";
    for (const auto& [row, counts] : table) {
      auto get = [&](Nature n) { return counts.contains(n) ? counts.at(n) : 0; };
      std::cout << std::setw(16) << row << std::setw(12) << get(Nature::Algebraic) << std::setw(26)
                << get(Nature::HolonomicNonAlgebraic) << get(Nature::NotCovered) << "\n";
    }
  }
  const std::string path = o.out.empty() ? "catalog.json" : o.out;
  write_file(path, text);
  if (!o.json) std::cout << "\ncatalog written to " << path << "\n";
  return kExitOk;
}

void print_side(const char* label, const OrbitSide& side) {
  std::cout << label << "f = " << side.f.to_string() << "\n";
  std::cout << label << "psi = " << side.psi.to_string() << "\n";
  for (std::size_t i = 0; i < side.f_powers.size(); ++i) {
    std::cout << label << "f o delta^" << i + 1 << " = " << side.f_powers[i].to_string() << "\n";
  }
  for (std::size_t k = 1; k < side.psi_powers.size(); ++k) {
    std::cout << label << "psi o delta^" << k << " = " << side.psi_powers[k].to_string() << "\n";
  }
  std::cout << label << "N(f) = " << side.norm.to_string() << "\n";
  std::cout << label << "orbit sum (raw) = " << side.orbit_sum_raw.to_string() << "\n";
  std::cout << label << "orbit sum (on curve) = " << side.orbit_sum_on_curve.to_string() << "\n";
}

int cmd_classify(const Options& o) {
  const StepSet s = StepSet::parse(o.steps);
  if (s.empty()) throw EmptyStepSet("no steps given");
  const Classification cls = classify_full(s, o.nmax);
  const ClassificationRecord& r = cls.record;
  if (o.json) {
    std::cout << record_to_json(r).dump(2) << "\n";
    return kExitOk;
  }
  const Kernel k = kernel_of(s);
  std::cout << "steps: " << s.to_string() << " (mask " << int(s.mask()) << ")\n";
  std::cout << "kernel z*K = " << rf(k.K) << "\n";
  std::cout << "c = " << rf(k.c) << "\n";
  std::cout << "c~ = " << rf(k.c_tilde) << "\n";
  try {
    std::cout << "xi = " << xi_map(s).to_string() << "\n";
    std::cout << "eta = " << eta_map(s).to_string() << "\n";
    std::cout << "delta substitution = " << delta_substitution(s).to_string() << "\n";
  } catch (const UndefinedGenerator& e) {
    std::cout << "generators: " << e.what() << "\n";
  }
  std::cout << "order_W = " << r.order_W.to_string() << "\n";
  std::cout << "order_H = " << r.order_H.to_string() << "\n";
  if (cls.group.degree_cap_hit) std::cout << "degree cap reached while searching for the order\n";
  if (cls.orbit) {
    print_side("", cls.orbit->main);
    print_side("mirror ", cls.orbit->tilde);
  }
  if (cls.signed_xy) std::cout << "signed orbit sum of xy = " << cls.signed_xy->to_string() << "\n";
  for (const ClosedFormCheck& c : cls.checks) {
    std::cout << "closed form " << to_string(c.tag);
    if (!c.parameter.empty()) std::cout << " [t = " << c.parameter << "]";
    std::cout << ": " << (c.passed ? "matches" : "no match");
    if (c.passed) std::cout << (c.orientation == Orientation::Direct ? " (direct)" : " (transposed)");
    std::cout << "\n";
  }
  std::cout << "norm_ok = " << yes_no(r.norm_ok) << ", cns = " << yes_no(r.cns) << ", cns~ = " << yes_no(r.cns_tilde)
            << "\n";
  std::cout << "closed_form_tag = " << to_string(r.closed_form_tag);
  if (!r.closed_form_parameter.empty()) std::cout << " (" << r.closed_form_parameter << ")";
  std::cout << "\n";
  if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
  std::cout << "verdict: " << to_string(r.nature);
  if (r.order_H.finite) std::cout << ", order " << r.order_H.value;
  std::cout << "\n";
  return kExitOk;
}

int cmd_count(const Options& o) {
  const StepSet s = StepSet::parse(o.steps);
  if (o.kmax < 0) throw InvalidArgument("--kmax is required and must be >= 0");
  const SeriesBox box = count_walks(s, o.kmax);
  std::ostringstream tsv;
  write_tsv(tsv, box);
  if (o.out.empty()) {
    std::cout << tsv.str();
  } else {
    write_file(o.out, tsv.str());
    std::cout << "counts for " << s.to_string() << " up to length " << o.kmax << " written to " << o.out << "\n";
    std::cout << "excursions:";
    for (int k = 0; k <= o.kmax; ++k) std::cout << " " << box.at(0, 0, k);
    std::cout << "\n";
  }
  return kExitOk;
}

std::vector<std::pair<int, int>> ladder(int a0, int a1, int b0, int b1) {
  std::vector<std::pair<int, int>> out;
  for (int a = a0; a <= a1; ++a) {
    for (int b = b0; b <= b1; ++b) out.emplace_back(a, b);
  }
  std::stable_sort(out.begin(), out.end(), [](auto p, auto q) {
    return (p.first + 1) * (p.second + 1) < (q.first + 1) * (q.second + 1);
  });
  return out;
}

int cmd_guess(const Options& o) {
  const StepSet s = StepSet::parse(o.steps);
  const int kmax = o.kmax < 0 ? 99 : o.kmax;
  const UniSeries series = excursion_series(s, kmax);
  std::cout << "excursion series of " << s.to_string() << ", " << series.coefficients.size() << " terms\n";
  if (!o.out.empty()) {
    std::ostringstream text;
    write_series(text, series);
    write_file(o.out, text.str());
  }

  const auto rec_grid = (o.order >= 0 && o.degree >= 0) ? ladder(o.order, o.order, o.degree, o.degree)
                                                        : ladder(1, 8, 0, 10);
  std::optional<Recurrence> rec;
  for (auto [order, degree] : rec_grid) {
    try {
      rec = guess_recurrence(series, order, degree);
    } catch (const InsufficientTerms&) {
      continue;
    }
    if (rec) break;
  }
  if (rec) {
    std::cout << "recurrence found, validated on held-back terms\n";
    std::cout << "  order " << rec->order << ", degree " << rec->degree << ", solved on " << rec->terms_solved
              << " terms, validated on " << rec->terms_validated << "\n";
    std::cout << "  " << rec->to_string() << "\n";
  } else {
    std::cout << "no recurrence found within the searched bounds\n";
  }

  const auto alg_grid = (o.deg_t >= 0 && o.deg_z >= 0) ? ladder(o.deg_t, o.deg_t, o.deg_z, o.deg_z)
                                                       : ladder(1, 8, 1, 16);
  std::optional<AlgebraicRelation> alg;
  for (auto [dt, dz] : alg_grid) {
    try {
      alg = guess_algebraic(series, dt, dz);
    } catch (const InsufficientTerms&) {
      continue;
    }
    if (alg) break;
  }
  if (alg) {
    std::cout << "algebraic relation found, validated on held-back terms\n";
    std::cout << "  deg_T " << alg->deg_t << ", deg_z " << alg->deg_z << ", solved on " << alg->terms_solved
              << " terms, validated on " << alg->terms_validated << "\n";
    std::cout << "  " << alg->to_string() << "\n";
  } else {
    std::cout << "no algebraic relation found within the searched bounds\n";
  }
  return kExitOk;
}

int cmd_elliptic(const Options& o) {
  const StepSet s = StepSet::parse(o.steps);
  if (s.empty()) throw EmptyStepSet("no steps given");
  const Rational z0 = o.z0.empty() ? default_z0(s) : parse_rational(o.z0);
  SuiteOptions suite;
  suite.adaptive_precision = !o.fixed_precision;
  const EllipticReport r = elliptic_suite(s, z0, o.prec, suite);
  const nlohmann::json j = to_json(r);
  if (!o.out.empty()) write_file(o.out, j.dump(2) + "\n");
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    PrecisionGuard guard(r.precision_bits());
    std::cout << "steps: " << s.to_string() << ", z0 = " << z0.get_str() << ", precision " << r.precision_bits()
              << " bits\n";
    std::cout << "g2 = " << r.data.invariants.g2.get_str() << ", g3 = " << r.data.invariants.g3.get_str() << "\n";
    std::cout << "omega1 = i*" << to_decimal(r.data.lattice.imag_period()) << "\n";
    std::cout << "omega2 = " << to_decimal(r.data.lattice.real_period()) << "\n";
    if (r.translation) {
      std::cout << "omega3 = " << to_decimal(r.translation->omega3) << ", n = " << r.translation->n
                << ", k = " << r.translation->k << "\n";
    }
    for (const ResidualCheck& c : r.checks) {
      std::cout << std::left << std::setw(26) << c.name << " " << std::setw(18)
                << c.value.str(6, std::ios::scientific) << (c.lower_bound ? " > " : " < ")
                << c.tolerance.str(3, std::ios::scientific) << "  " << (c.passed ? "PASS" : "FAIL") << "\n";
    }
    std::cout << (r.passed() ? "all residual checks passed" : "residual checks failed") << "\n";
  }
  return r.passed() ? kExitOk : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadrant walk classification and elliptic verification"};
  app.require_subcommand(1);
  Options o;

  auto* census = app.add_subcommand("census", "classify all 79 models and write the catalog");
  census->add_option("--nmax", o.nmax, "bound on the order search")->check(CLI::PositiveNumber);
  census->add_option("--out", o.out, "catalog path (default catalog.json)");
  census->add_flag("--json", o.json, "print the catalog instead of the summary");

  auto* classify_cmd = app.add_subcommand("classify", "report every classification step for one model");
  classify_cmd->add_option("--steps", o.steps, "step set, e.g. NE,W,S")->required();
  classify_cmd->add_option("--nmax", o.nmax, "bound on the order search")->check(CLI::PositiveNumber);
  classify_cmd->add_flag("--json", o.json, "print the classification record as JSON");

  auto* count = app.add_subcommand("count", "count quadrant walks");
  count->add_option("--steps", o.steps, "step set")->required();
  count->add_option("--kmax", o.kmax, "maximal length")->required()->check(CLI::NonNegativeNumber);
  count->add_option("--out", o.out, "TSV path (default stdout)");

  auto* guess = app.add_subcommand("guess", "guess equations for the excursion series");
  guess->add_option("--steps", o.steps, "step set")->required();
  guess->add_option("--kmax", o.kmax, "maximal length (default 99)")->check(CLI::NonNegativeNumber);
  guess->add_option("--order", o.order, "recurrence order")->check(CLI::NonNegativeNumber);
  guess->add_option("--degree", o.degree, "recurrence coefficient degree")->check(CLI::NonNegativeNumber);
  guess->add_option("--deg-t", o.deg_t, "degree of the relation in T")->check(CLI::NonNegativeNumber);
  guess->add_option("--deg-z", o.deg_z, "degree of the relation in z")->check(CLI::NonNegativeNumber);
  guess->add_option("--out", o.out, "write the series, one coefficient per line");

  auto* elliptic = app.add_subcommand("elliptic", "run the elliptic residual suite");
  elliptic->add_option("--steps", o.steps, "step set")->required();
  elliptic->add_option("--z0", o.z0, "rational 0 < z0 < 1/|S| (default 1/(2|S|))");
  elliptic->add_option("--prec", o.prec, "working precision in bits")->check(CLI::Range(64u, 1024u));
  elliptic->add_option("--out", o.out, "JSON report path");
  elliptic->add_flag("--json", o.json, "print the JSON report");
  elliptic->add_flag("--fixed-precision", o.fixed_precision, "never rerun at doubled precision");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*census) return cmd_census(o);
    if (*classify_cmd) return cmd_classify(o);
    if (*count) return cmd_count(o);
    if (*guess) return cmd_guess(o);
    if (*elliptic) return cmd_elliptic(o);
  } catch (const Error& e) {
    const bool usage = dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidArgument*>(&e) ||
                       dynamic_cast<const EmptyStepSet*>(&e) || dynamic_cast<const TruncationTooShallow*>(&e) ||
                       dynamic_cast<const DegenerateKernel*>(&e) || dynamic_cast<const ComplexBranchPoints*>(&e);
    std::cerr << (usage ? "error: " : "internal error: ") << e.what() << "\n";
    return usage ? kExitUsage : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
