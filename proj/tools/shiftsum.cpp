// shiftsum: command-line front end for the scp library.
//
// Numeric output goes to stdout; errors go to stderr as a one-line JSON
// object.  Exit status 0 on success, 2 for coverage/resource errors, 1 for
// every other failure (including bad command lines).

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scp/acceptance.hpp"
#include "scp/amplifier.hpp"
#include "scp/arith.hpp"
#include "scp/config.hpp"
#include "scp/errors.hpp"
#include "scp/lfunc.hpp"
#include "scp/mellin.hpp"
#include "scp/quadforms.hpp"
#include "scp/shifted.hpp"
#include "scp/special.hpp"

namespace {

using json = nlohmann::json;
using cplx = std::complex<double>;
using scp::ErrorKind;
using scp::OutputFormat;

// Options shared by every leaf subcommand.  Flags given explicitly win over
// values read from --config.
struct Common {
  std::string config_path;
  std::string format;
  unsigned threads = 1;
  bool deterministic = false;
  double rel_tol = 0.0;
  double abs_tol = 0.0;
  double radius = 0.0;
  double kernel_width = 0.0;
  double cutoff_multiplier = 0.0;
  double contour_sigma = 0.0;
  std::vector<CLI::Option*> opts;
  scp::RunConfig cfg;

  CLI::Option* opt(const std::string& name) const {
    for (auto* o : opts) {
      if (o->check_lname(name.substr(2))) return o;
    }
    return nullptr;
  }
  bool given(const std::string& name) const {
    const auto* o = opt(name);
    return o != nullptr && o->count() > 0;
  }

  void resolve(OutputFormat fallback) {
    if (!config_path.empty()) {
      cfg = scp::load_config(config_path);
    } else {
      cfg.output_format = fallback;
    }
    if (given("--format")) cfg.output_format = scp::parse_output_format(format);
    if (given("--threads")) cfg.threads = threads;
    if (given("--deterministic")) cfg.deterministic = deterministic;
    if (given("--rel-tol")) cfg.quadrature.rel_tol = rel_tol;
    if (given("--abs-tol")) cfg.quadrature.abs_tol = abs_tol;
    if (given("--truncation-radius")) cfg.quadrature.truncation_radius = radius;
    if (given("--kernel-width")) cfg.afe.kernel_width = kernel_width;
    if (given("--cutoff-multiplier")) cfg.afe.cutoff_multiplier = cutoff_multiplier;
    if (given("--contour-sigma")) cfg.afe.contour_sigma = contour_sigma;
    cfg.validate();
  }
};

void add_common(CLI::App* sub, Common& c) {
  c.opts.push_back(sub->add_option("--config", c.config_path, "key=value configuration file"));
  c.opts.push_back(sub->add_option("--format", c.format, "output format: json, csv or dat"));
  c.opts.push_back(sub->add_option("--threads", c.threads, "worker threads for lattice sums"));
  c.opts.push_back(sub->add_flag("--deterministic", c.deterministic, "report elapsed time as 0"));
  c.opts.push_back(sub->add_option("--rel-tol", c.rel_tol, "quadrature relative tolerance"));
  c.opts.push_back(sub->add_option("--abs-tol", c.abs_tol, "quadrature absolute tolerance"));
  c.opts.push_back(sub->add_option("--truncation-radius", c.radius, "Whittaker integral truncation"));
  c.opts.push_back(sub->add_option("--kernel-width", c.kernel_width, "AFE kernel width"));
  c.opts.push_back(sub->add_option("--cutoff-multiplier", c.cutoff_multiplier, "AFE cutoff multiplier X"));
  c.opts.push_back(sub->add_option("--contour-sigma", c.contour_sigma, "AFE contour abscissa"));
}

// "0.3", "0.5i", "-i", "0.1+0.4i", "2-3i"
cplx parse_complex(const std::string& text) {
  std::string t;
  for (char ch : text) {
    if (ch != ' ') t += ch;
  }
  if (t.empty()) scp::fail(ErrorKind::parse, "empty complex number");
  try {
    if (t.back() != 'i') return {std::stod(t), 0.0};
    t.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = t.size(); i-- > 1;) {
      if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    auto imag_of = [](const std::string& s) {
      if (s.empty() || s == "+") return 1.0;
      if (s == "-") return -1.0;
      return std::stod(s);
    };
    if (split == std::string::npos) return {0.0, imag_of(t)};
    return {std::stod(t.substr(0, split)), imag_of(t.substr(split))};
  } catch (const std::logic_error&) {
    scp::fail(ErrorKind::parse, "malformed complex number '" + text + "'");
  }
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Rows of named columns rendered as a JSON array (or a single object),
// comma-separated values with a header, or whitespace columns.
struct Records {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  bool single = false;

  void render(std::ostream& out, OutputFormat format) const {
    if (format == OutputFormat::json) {
      json arr = json::array();
      for (const auto& row : rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
        arr.push_back(obj);
      }
      out << (single && arr.size() == 1 ? arr[0] : arr).dump(2) << "\n";
      return;
    }
    const char* sep = format == OutputFormat::csv ? "," : " ";
    out << (format == OutputFormat::dat ? "# " : "");
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? sep : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? sep : "");
        if (row[i].is_number()) {
          out << num(row[i].get<double>());
        } else if (row[i].is_string()) {
          out << row[i].get<std::string>();
        } else {
          out << row[i].dump();
        }
      }
      out << "\n";
    }
  }
};

void require_format(OutputFormat f, std::initializer_list<OutputFormat> allowed, const char* who) {
  for (auto a : allowed) {
    if (a == f) return;
  }
  scp::fail(ErrorKind::domain, std::string(who) + ": output format '" + scp::output_format_name(f) +
                                   "' is not available here");
}

class Stopwatch {
 public:
  explicit Stopwatch(bool frozen) : frozen_(frozen), start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    if (frozen_) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  bool frozen_;
  std::chrono::steady_clock::time_point start_;
};

scp::arith::CoeffTable build_table(const std::string& rep_name, std::int64_t bound) {
  if (bound > scp::arith::kDefaultTableCeiling) {
    scp::fail(ErrorKind::resource, "table bound " + std::to_string(bound) + " exceeds the ceiling");
  }
  if (rep_name == "delta") return scp::arith::delta_coefficients(bound);
  return scp::arith::coeff_from_satake(scp::arith::rep_by_name(rep_name, bound), bound);
}

void write_to(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) scp::fail(ErrorKind::domain, "cannot open '" + path + "' for writing");
  body(out);
}

scp::shifted::WeightFn make_weight(const std::string& family, double center, double width) {
  scp::shifted::WeightFn w{scp::shifted::parse_weight_family(family), center, width};
  w.validate();
  return w;
}

// Lattice-side options shared by the quad, growth and Mellin subcommands.
struct LatticeArgs {
  std::string form = "1;2";
  std::string poly;
  scp::quadforms::QuadraticForm f() const { return scp::quadforms::QuadraticForm::parse(form); }
  scp::quadforms::SphericalPoly p(int k) const {
    return poly.empty() ? scp::quadforms::SphericalPoly::constant(k) : scp::quadforms::SphericalPoly::parse(k, poly);
  }
};

void add_lattice(CLI::App* sub, LatticeArgs& a) {
  sub->add_option("--form", a.form, "k;upper triangle of 2A, e.g. '2;2 0 2'")->capture_default_str();
  sub->add_option("--poly", a.poly, "spherical polynomial 'c:e1,..,ek;...' (default 1)");
}

struct WeightArgs {
  std::string family = "compact_bump";
  double center = 1.0;
  double width = 1.0;
};

void add_weight(CLI::App* sub, WeightArgs& w, const std::string& prefix = "") {
  sub->add_option("--" + prefix + "weight", w.family, "gaussian_bump or compact_bump")->capture_default_str();
  sub->add_option("--" + prefix + "center", w.center, "weight center")->capture_default_str();
  sub->add_option("--" + prefix + "width", w.width, "weight width")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shifted convolution sums, central values and amplifier bookkeeping"};
  app.require_subcommand(1);
  std::function<void()> action;
  std::vector<std::unique_ptr<Common>> commons;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* sub = parent->add_subcommand(name, help);
    commons.push_back(std::make_unique<Common>());
    add_common(sub, *commons.back());
    return std::make_pair(sub, commons.back().get());
  };

  // coeffs ------------------------------------------------------------------
  std::string rep_name = "delta";
  std::int64_t bound = 1000;
  std::string out_path, in_path;
  {
    auto [sub, c] = leaf(&app, "coeffs", "write or re-import a coefficient table");
    sub->add_option("--rep", rep_name, "delta, sym2, sym3 or formal_ones")->capture_default_str();
    sub->add_option("--bound", bound, "largest index")->capture_default_str();
    sub->add_option("--out", out_path, "output file (stdout when absent)");
    sub->add_option("--in", in_path, "read this table instead of building one");
    sub->callback([&, c = c] {
      action = [&, c] {
        c->resolve(OutputFormat::dat);
        require_format(c->cfg.output_format, {OutputFormat::dat, OutputFormat::json}, "coeffs");
        scp::arith::CoeffTable table;
        if (!in_path.empty()) {
          std::ifstream in(in_path);
          if (!in) scp::fail(ErrorKind::domain, "cannot open '" + in_path + "'");
          table = scp::arith::read_table(in);
        } else {
          table = build_table(rep_name, bound);
        }
        write_to(out_path, [&](std::ostream& out) {
          if (c->cfg.output_format == OutputFormat::dat) {
            scp::arith::write_table(out, table);
            return;
          }
          json values = json::array();
          for (std::int64_t m = 1; m <= table.bound(); ++m) values.push_back({table[m].real(), table[m].imag()});
          json doc{{"rep", table.rep_name()}, {"degree", table.degree()}, {"bound", table.bound()}, {"values", values}};
          out << doc.dump(2) << "\n";
        });
      };
    });
  }

  // special mellin-check ----------------------------------------------------
  std::vector<double> kappas{0.5, 0.0, 0.0};
  std::vector<std::string> nus{"0", "0.3", "0.5i"};
  std::vector<double> s_values{1.0, 1.5, 2.0};
  {
    auto* special = app.add_subcommand("special", "special-function checks");
    special->require_subcommand(1);
    auto [sub, c] = leaf(special, "mellin-check", "Mellin transform of e^-y/2 W against its Gamma product");
    sub->add_option("--kappa", kappas, "kappa values (paired with --nu)");
    sub->add_option("--nu", nus, "nu values, complex allowed (e.g. 0.5i)");
    sub->add_option("--s", s_values, "real s values");
    sub->callback([&, c = c] {
      action = [&, c] {
        c->resolve(OutputFormat::csv);
        require_format(c->cfg.output_format, {OutputFormat::csv, OutputFormat::json}, "special mellin-check");
        if (kappas.size() != nus.size()) scp::fail(ErrorKind::domain, "--kappa and --nu need the same length");
        Records rec{{"kappa", "nu_re", "nu_im", "s", "lhs", "rhs", "relerr"}, {}};
        for (std::size_t i = 0; i < kappas.size(); ++i) {
          const scp::special::WhittakerParams wp{kappas[i], parse_complex(nus[i])};
          for (double s : s_values) {
            const cplx lhs = scp::special::whittaker_mellin_lhs(wp, s, c->cfg.quadrature);
            const cplx rhs = scp::special::whittaker_mellin_rhs(wp, s);
            rec.rows.push_back({wp.kappa, wp.nu.real(), wp.nu.imag(), s, lhs.real(), rhs.real(),
                                std::abs(lhs - rhs) / std::abs(rhs)});
          }
        }
        rec.render(std::cout, c->cfg.output_format);
      };
    });
  }

  // theta -------------------------------------------------------------------
  LatticeArgs theta_lat;
  std::int64_t theta_bound = 100;
  {
    auto [sub, c] = leaf(&app, "theta", "theta coefficients r(m) of a form and polynomial");
    add_lattice(sub, theta_lat);
    sub->add_option("--bound", theta_bound, "largest m")->capture_default_str();
    sub->add_option("--out", out_path, "output file (stdout when absent)");
    sub->callback([&, c = c] {
      action = [&, c] {
        c->resolve(OutputFormat::dat);
        require_format(c->cfg.output_format, {OutputFormat::dat, OutputFormat::json}, "theta");
        const auto f = theta_lat.f();
        const auto p = theta_lat.p(f.k());
        const auto theta = scp::quadforms::theta_coeffs(f, p, theta_bound);
        const bool harmonic = scp::quadforms::harmonicity_check(f, p);
        write_to(out_path, [&](std::ostream& out) {
          if (c->cfg.output_format == OutputFormat::dat) {
            // Same layout as a coefficient table, starting at m = 1.
            std::vector<cplx> vals(theta.r.begin() + 1, theta.r.end());
            scp::arith::write_table(out, scp::arith::CoeffTable("theta", f.k(), std::move(vals)));
            return;
          }
          json exact = json::array();
          for (const auto& q : theta.exact) {
            exact.push_back(q.denominator() == 1 ? std::to_string(q.numerator())
                                                 : std::to_string(q.numerator()) + "/" + std::to_string(q.denominator()));
          }
          json doc{{"form", f.describe()}, {"harmonic", harmonic}, {"bound", theta.bound}, {"r", exact}};
          out << doc.dump(2) << "\n";
        });
      };
    });
  }

  // scp quad / linear / growth ---------------------------------------------
  LatticeArgs quad_lat;
  WeightArgs quad_w;
  std::int64_t alpha = 1;
  double Y = 100.0;
  std::int64_t table_bound = 0;
  std::string rep_b = "delta";
  std::int64_t l1 = 1, l2 = 1;
  WeightArgs w2;
  std::vector<double> Ys;
  double y_min = 1e3, y_max = 1e5;
  int points = 9;
  {
    auto* scp_cmd = app.add_subcommand("scp", "shifted convolution sums");
    scp_cmd->require_subcommand(1);

    auto [quad, cq] = leaf(scp_cmd, "quad", "sum over a of p(a) c(f(a)+alpha) W((f(a)+alpha)/Y) / sqrt");
    quad->add_option("--rep", rep_name, "coefficient source")->capture_default_str();
    add_lattice(quad, quad_lat);
    add_weight(quad, quad_w);
    quad->add_option("--alpha", alpha, "shift")->capture_default_str();
    quad->add_option("--Y", Y, "scale")->capture_default_str();
    quad->add_option("--table-bound", table_bound, "coefficient table length (default: weight support)");
    quad->callback([&, c = cq] {
      action = [&, c] {
        c->resolve(OutputFormat::json);
        require_format(c->cfg.output_format, {OutputFormat::json, OutputFormat::csv}, "scp quad");
        const Stopwatch clock(c->cfg.deterministic);
        const auto W = make_weight(quad_w.family, quad_w.center, quad_w.width);
        const auto f = quad_lat.f();
        const auto p = quad_lat.p(f.k());
        const std::int64_t need = static_cast<std::int64_t>(std::ceil(Y * W.support().second));
        const auto table = build_table(rep_name, table_bound > 0 ? table_bound : need + std::llabs(alpha));
        const auto r = scp::shifted::quad_shift_sum(table, f, p, alpha, Y, W, c->cfg.threads);
        json params{{"rep", rep_name}, {"form", f.describe()}, {"alpha", alpha}, {"Y", Y},
                    {"weight", quad_w.family}, {"center", quad_w.center}, {"width", quad_w.width}};
        Records rec{{"params", "value", "term_count", "elapsed"},
                    {{params, json{r.value.real(), r.value.imag()}, r.term_count, clock.seconds()}},
                    true};
        if (c->cfg.output_format == OutputFormat::csv) {
          rec = Records{{"value_re", "value_im", "term_count", "elapsed"},
                        {{r.value.real(), r.value.imag(), r.term_count, clock.seconds()}}};
        }
        rec.render(std::cout, c->cfg.output_format);
      };
    });

    auto [lin, cl] = leaf(scp_cmd, "linear", "sum over l1 g1 - l2 g2 = alpha of cA(g1) conj(cB(g2)) weights");
    lin->add_option("--rep", rep_name, "first coefficient source")->capture_default_str();
    lin->add_option("--rep-b", rep_b, "second coefficient source")->capture_default_str();
    lin->add_option("--l1", l1, "first multiplier")->capture_default_str();
    lin->add_option("--l2", l2, "second multiplier")->capture_default_str();
    lin->add_option("--alpha", alpha, "shift")->capture_default_str();
    lin->add_option("--Y", Y, "scale")->capture_default_str();
    add_weight(lin, quad_w);
    add_weight(lin, w2, "b-");
    lin->callback([&, c = cl] {
      action = [&, c] {
        c->resolve(OutputFormat::json);
        require_format(c->cfg.output_format, {OutputFormat::json, OutputFormat::csv}, "scp linear");
        const Stopwatch clock(c->cfg.deterministic);
        const auto W1 = make_weight(quad_w.family, quad_w.center, quad_w.width);
        const auto W2 = make_weight(w2.family, w2.center, w2.width);
        if (l1 < 1 || l2 < 1) scp::fail(ErrorKind::domain, "scp linear: l1 and l2 must be positive");
        const auto len = [&](const scp::shifted::WeightFn& W, std::int64_t l) {
          return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(Y * W.support().second / l)));
        };
        const auto tA = build_table(rep_name, len(W1, l1));
        const auto tB = build_table(rep_b, len(W2, l2));
        const auto r = scp::shifted::linear_shift_sum(tA, tB, l1, l2, alpha, Y, W1, W2);
        json params{{"rep_a", rep_name}, {"rep_b", rep_b}, {"l1", l1}, {"l2", l2}, {"alpha", alpha}, {"Y", Y}};
        Records rec{{"params", "value", "term_count", "coprimality_flag", "elapsed"},
                    {{params, json{r.value.real(), r.value.imag()}, r.term_count, r.coprimality_flag,
                      clock.seconds()}},
                    true};
        if (c->cfg.output_format == OutputFormat::csv) {
          rec = Records{{"value_re", "value_im", "term_count", "coprimality_flag", "elapsed"},
                        {{r.value.real(), r.value.imag(), r.term_count, r.coprimality_flag ? 1 : 0,
                          clock.seconds()}}};
        }
        rec.render(std::cout, c->cfg.output_format);
      };
    });

    auto [gr, cg] = leaf(scp_cmd, "growth", "log |S(Y)| against log Y for a quadratic shifted sum");
    gr->add_option("--rep", rep_name, "coefficient source")->capture_default_str();
    add_lattice(gr, quad_lat);
    add_weight(gr, quad_w);
    gr->add_option("--alpha", alpha, "shift")->capture_default_str();
    gr->add_option("--Y", Ys, "explicit list of scales");
    gr->add_option("--y-min", y_min, "smallest scale of the geometric sweep")->capture_default_str();
    gr->add_option("--y-max", y_max, "largest scale of the geometric sweep")->capture_default_str();
    gr->add_option("--points", points, "points in the geometric sweep")->capture_default_str();
    gr->add_option("--out", out_path, "output file (stdout when absent)");
    gr->callback([&, c = cg] {
      action = [&, c] {
        c->resolve(OutputFormat::dat);
        require_format(c->cfg.output_format, {OutputFormat::dat, OutputFormat::json, OutputFormat::csv}, "scp growth");
        std::vector<double> scales = Ys;
        if (scales.empty()) {
          if (points < 2 || !(y_max > y_min && y_min > 0.0)) scp::fail(ErrorKind::domain, "scp growth: bad sweep");
          for (int i = 0; i < points; ++i) {
            scales.push_back(y_min * std::pow(y_max / y_min, static_cast<double>(i) / (points - 1)));
          }
        }
        const auto W = make_weight(quad_w.family, quad_w.center, quad_w.width);
        const auto f = quad_lat.f();
        const auto p = quad_lat.p(f.k());
        double top = 0.0;
        for (double s : scales) top = std::max(top, s);
        const auto table = build_table(rep_name, static_cast<std::int64_t>(std::ceil(top * W.support().second)) +
                                                     std::llabs(alpha));
        const auto pts = scp::shifted::growth_experiment(table, f, p, alpha, scales, W, c->cfg.threads);
        std::vector<std::pair<double, double>> vals;
        Records rec{{"log_Y", "log_abs_S"}, {}};
        for (const auto& pt : pts) {
          vals.emplace_back(pt.Y, std::abs(pt.value));
          rec.rows.push_back({std::log(pt.Y), std::log(std::abs(pt.value))});
        }
        write_to(out_path, [&](std::ostream& out) {
          if (c->cfg.output_format != OutputFormat::json) {
            rec.render(out, c->cfg.output_format);
            return;
          }
          const auto fit = scp::shifted::growth_fit(vals);
          json rows = json::array();
          for (const auto& pt : pts) {
            rows.push_back({{"Y", pt.Y}, {"value", {pt.value.real(), pt.value.imag()}}, {"term_count", pt.term_count}});
          }
          json doc{{"points", rows},
                   {"slope", fit.slope},
                   {"intercept", fit.intercept},
                   {"residual", fit.residual},
                   {"predicted", scp::shifted::predicted_exponent(f.k(), alpha, 7.0 / 64.0)}};
          out << doc.dump(2) << "\n";
        });
      };
    });
  }

  // lvalue ------------------------------------------------------------------
  std::int64_t q = 5, chi_index = 2;
  std::int64_t prime_bound = 600000;
  {
    auto [sub, c] = leaf(&app, "lvalue", "central value L(1/2, rep x chi) by the approximate functional equation");
    sub->add_option("--rep", rep_name, "delta, sym2, sym3 or formal_ones")->capture_default_str();
    sub->add_option("--q", q, "character modulus")->capture_default_str();
    sub->add_option("--index", chi_index, "character index")->capture_default_str();
    sub->add_option("--prime-bound", prime_bound, "Satake data available up to this prime")->capture_default_str();
    sub->callback([&, c = c] {
      action = [&, c] {
        c->resolve(OutputFormat::json);
        require_format(c->cfg.output_format, {OutputFormat::json, OutputFormat::csv}, "lvalue");
        if (prime_bound > scp::arith::kDefaultTableCeiling) {
          scp::fail(ErrorKind::resource, "lvalue: prime bound exceeds the table ceiling");
        }
        const auto rep = scp::arith::rep_by_name(rep_name, prime_bound);
        const auto chi = scp::arith::dirichlet_char(q, chi_index);
        const auto cv = scp::lfunc::central_value(rep, chi, c->cfg.afe);
        Records rec{{"C", "value_re", "value_im", "epsilon", "residual"},
                    {{cv.conductor, cv.value.real(), cv.value.imag(), json{cv.epsilon.real(), cv.epsilon.imag()},
                      cv.consistency_residual}},
                    true};
        if (c->cfg.output_format == OutputFormat::csv) {
          rec = Records{{"C", "value_re", "value_im", "epsilon_re", "epsilon_im", "residual"},
                        {{cv.conductor, cv.value.real(), cv.value.imag(), cv.epsilon.real(), cv.epsilon.imag(),
                          cv.consistency_residual}}};
        }
        rec.render(std::cout, c->cfg.output_format);
      };
    });
  }

  // mellin check / dseries --------------------------------------------------
  LatticeArgs mel_lat;
  int degree = 2;
  double kappa = 0.5;
  std::string nu = "0";
  std::string s_text = "3";
  std::int64_t mel_bound = 2000;
  {
    auto* mel = app.add_subcommand("mellin", "constant-coefficient Mellin transforms");
    mel->require_subcommand(1);
    auto common_mellin = [&](CLI::App* sub) {
      sub->add_option("--rep", rep_name, "coefficient source")->capture_default_str();
      add_lattice(sub, mel_lat);
      sub->add_option("--s", s_text, "complex s, e.g. 3 or 2.5+1i")->capture_default_str();
      sub->add_option("--bound", mel_bound, "lattice truncation M")->capture_default_str();
    };
    auto [chk, cc] = leaf(mel, "check", "numeric y-integral route against the closed Gamma product");
    common_mellin(chk);
    chk->add_option("--n", degree, "degree of the representation")->capture_default_str();
    chk->add_option("--kappa", kappa, "Whittaker kappa")->capture_default_str();
    chk->add_option("--nu", nu, "Whittaker nu (complex allowed)")->capture_default_str();
    chk->callback([&, c = cc] {
      action = [&, c] {
        c->resolve(OutputFormat::csv);
        require_format(c->cfg.output_format, {OutputFormat::csv, OutputFormat::json}, "mellin check");
        scp::mellin::MellinSpec spec;
        spec.n = degree;
        spec.f = mel_lat.f();
        spec.p = mel_lat.p(spec.f.k());
        spec.kappa = kappa;
        spec.nu = parse_complex(nu);
        spec.s = parse_complex(s_text);
        const auto table = build_table(rep_name, mel_bound);
        const auto closed = scp::mellin::constant_coeff_mellin_closed(table, spec, mel_bound);
        const auto numeric = scp::mellin::constant_coeff_mellin_numeric(table, spec, mel_bound, c->cfg.quadrature);
        const double scale = std::max(std::abs(closed.value), std::abs(numeric.value));
        Records rec{{"kappa", "nu_re", "nu_im", "s_re", "s_im", "closed", "numeric", "relerr"},
                    {{kappa, spec.nu.real(), spec.nu.imag(), spec.s.real(), spec.s.imag(), closed.value.real(),
                      numeric.value.real(), scale == 0.0 ? 0.0 : std::abs(closed.value - numeric.value) / scale}}};
        rec.render(std::cout, c->cfg.output_format);
      };
    });
    auto [ds, cd] = leaf(mel, "dseries", "sum of p(a) c(f(a)) f(a)^-s by theta and lattice routes");
    common_mellin(ds);
    ds->callback([&, c = cd] {
      action = [&, c] {
        c->resolve(OutputFormat::json);
        require_format(c->cfg.output_format, {OutputFormat::json}, "mellin dseries");
        const auto f = mel_lat.f();
        const auto p = mel_lat.p(f.k());
        const cplx s = parse_complex(s_text);
        const auto table = build_table(rep_name, mel_bound);
        const auto th = scp::mellin::dirichlet_series_D(table, f, p, s, mel_bound);
        const auto lat = scp::mellin::dirichlet_series_D_lattice(table, f, p, s, mel_bound);
        json doc{{"s", {s.real(), s.imag()}},
                 {"bound", mel_bound},
                 {"theta_route", {th.value.real(), th.value.imag()}},
                 {"lattice_route", {lat.value.real(), lat.value.imag()}},
                 {"tail_bound", th.tail_bound}};
        std::cout << doc.dump(2) << "\n";
      };
    });
  }

  // amplify moment / exponents / balance, and the top-level exponents -------
  double L = 10.0;
  double theta0 = 7.0 / 64.0;
  double u = 0.0;
  int steps = 20;
  {
    auto* amp = app.add_subcommand("amplify", "amplified second moment and exponent algebra");
    amp->require_subcommand(1);

    auto [mom, cm] = leaf(amp, "moment", "amplified moment S and its one-term lower bound");
    mom->add_option("--rep", rep_name, "coefficient source")->capture_default_str();
    mom->add_option("--q", q, "modulus")->capture_default_str();
    mom->add_option("--index", chi_index, "character index")->capture_default_str();
    mom->add_option("--L", L, "amplifier length")->capture_default_str();
    mom->add_option("--Y", Y, "scale")->capture_default_str();
    add_weight(mom, quad_w);
    mom->callback([&, c = cm] {
      action = [&, c] {
        c->resolve(OutputFormat::json);
        require_format(c->cfg.output_format, {OutputFormat::json, OutputFormat::csv}, "amplify moment");
        scp::amplifier::AmplifierSpec spec;
        spec.q = q;
        spec.chi_index = chi_index;
        spec.L = L;
        spec.Y = Y;
        spec.weight = make_weight(quad_w.family, quad_w.center, quad_w.width);
        const auto table = build_table(rep_name, static_cast<std::int64_t>(std::ceil(Y * spec.weight.support().second)));
        const auto m = scp::amplifier::moment_S(table, spec);
        Records rec{{"q", "L", "S", "lower_bound", "ratio"},
                    {{q, L, m.S, m.lower_bound, m.S > 0.0 ? m.lower_bound / m.S : 0.0}},
                    true};
        rec.render(std::cout, c->cfg.output_format);
      };
    });

    auto exponents_action = [&](Common* c, bool table_style) {
      c->resolve(table_style ? OutputFormat::csv : OutputFormat::dat);
      const auto e = scp::amplifier::exponent_calculator({degree, theta0, u});
      if (c->cfg.output_format == OutputFormat::json) {
        std::cout << json{{"n", degree}, {"theta0", theta0}, {"u", u}, {"e_diag", e.e_diag},
                          {"e_offdiag", e.e_offdiag}, {"e_final", e.e_final}}
                         .dump(2)
                  << "\n";
      } else if (!table_style) {
        std::cout << num(e.e_final) << "\n";
      } else {
        Records rec{{"term", "exponent"}, {{"diagonal", e.e_diag}, {"off_diagonal", e.e_offdiag}, {"final", e.e_final}}};
        rec.render(std::cout, c->cfg.output_format);
      }
    };
    auto [ex, ce] = leaf(amp, "exponents", "diagonal, off-diagonal and final exponents of q");
    ex->add_option("--n", degree, "degree")->capture_default_str();
    ex->add_option("--theta0", theta0, "Ramanujan exponent")->capture_default_str();
    ex->add_option("--u", u, "amplifier exponent")->capture_default_str();
    ex->callback([&, c = ce, run = exponents_action] { action = [c, run] { run(c, true); }; });

    auto [bal, cb] = leaf(amp, "balance", "sweep over u and the balancing point");
    bal->add_option("--n", degree, "degree")->capture_default_str();
    bal->add_option("--theta0", theta0, "Ramanujan exponent")->capture_default_str();
    bal->add_option("--steps", steps, "number of sweep intervals on [0, 1]")->capture_default_str();
    bal->callback([&, c = cb] {
      action = [&, c] {
        c->resolve(OutputFormat::csv);
        require_format(c->cfg.output_format, {OutputFormat::csv, OutputFormat::json}, "amplify balance");
        if (steps < 1) scp::fail(ErrorKind::domain, "amplify balance: steps must be >= 1");
        const auto report = scp::amplifier::balance_report(degree, theta0);
        Records rec{{"u", "e_diag", "e_offdiag", "e_final"}, {}};
        for (int i = 0; i <= steps; ++i) {
          const double ui = static_cast<double>(i) / steps;
          const auto e = scp::amplifier::exponent_calculator({degree, theta0, ui});
          rec.rows.push_back({ui, e.e_diag, e.e_offdiag, e.e_final});
        }
        if (c->cfg.output_format == OutputFormat::csv) {
          rec.render(std::cout, OutputFormat::csv);
          return;
        }
        json sweep = json::array();
        for (const auto& row : rec.rows) {
          sweep.push_back({{"u", row[0]}, {"e_diag", row[1]}, {"e_offdiag", row[2]}, {"e_final", row[3]}});
        }
        json doc{{"sweep", sweep},
                 {"u_star", report.u_star},
                 {"clamped", report.clamped},
                 {"e_final_at_u_star", report.at_u_star.e_final},
                 {"convexity_exponent", report.convexity_exponent},
                 {"beats_convexity", report.beats_convexity}};
        if (report.has_quoted_u) {
          doc["quoted_u"] = report.quoted_u;
          doc["quoted_u_matches"] = report.quoted_u_matches;
          doc["e_final_at_quoted_u"] = report.at_quoted_u.e_final;
        }
        std::cout << doc.dump(2) << "\n";
      };
    });

    auto [top, ct] = leaf(&app, "exponents", "final exponent of q for given n, theta0, u");
    top->add_option("--n", degree, "degree")->capture_default_str();
    top->add_option("--theta0", theta0, "Ramanujan exponent")->capture_default_str();
    top->add_option("--u", u, "amplifier exponent")->capture_default_str();
    top->callback([&, c = ct, run = exponents_action] { action = [c, run] { run(c, false); }; });
  }

  // selftest ----------------------------------------------------------------
  std::vector<int> only;
  {
    auto [sub, c] = leaf(&app, "selftest", "run the acceptance criteria");
    sub->add_option("--only", only, "criterion ids to run");
    sub->callback([&, c = c] {
      action = [&, c] {
        c->resolve(OutputFormat::dat);
        int failed = 0;
        json results = json::array();
        const bool as_json = c->cfg.output_format == OutputFormat::json;
        scp::acceptance::run_all(only, [&](const scp::acceptance::CriterionResult& r) {
          if (!r.passed) ++failed;
          if (as_json) {
            results.push_back({{"id", r.id},
                               {"title", r.title},
                               {"passed", r.passed},
                               {"detail", r.detail},
                               {"seconds", c->cfg.deterministic ? 0.0 : r.seconds}});
          } else {
            std::cout << scp::acceptance::format_line(r) << std::endl;
          }
        });
        if (as_json) std::cout << json{{"criteria", results}, {"failed", failed}}.dump(2) << "\n";
        if (failed > 0) scp::fail(ErrorKind::convergence, std::to_string(failed) + " acceptance criteria failed");
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    if (action) action();
  } catch (const scp::Error& e) {
    std::cerr << json{{"error", scp::kind_name(e.kind())}, {"message", e.what()}}.dump() << "\n";
    return scp::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
