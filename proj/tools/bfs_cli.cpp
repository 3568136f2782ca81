// Command-line front end: reference-basis dumps, field interpolation and
// evaluation, Gauss point layouts and the refinement convergence study.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bfs/field.hpp"
#include "bfs/format.hpp"
#include "bfs/hermite1d.hpp"
#include "bfs/integrals.hpp"
#include "bfs/io.hpp"
#include "bfs/mesh.hpp"
#include "bfs/numerics.hpp"
#include "bfs/poly.hpp"
#include "bfs/quadrature.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::vector<double> domain{-1.0, 1.0, -1.0, 1.0};  // xmin xmax ymin ymax
  std::string levels = "1..8";
  std::string rules = "1,4,9";
  std::string out_dir = "out";
  std::string function = "quartic";
  bool levels_given = false;
};

struct LevelRange {
  int first = 1;
  int last = 8;
};

LevelRange parse_levels(const std::string& text) {
  LevelRange r;
  const auto pos = text.find("..");
  try {
    if (pos == std::string::npos) {
      r.first = r.last = std::stoi(text);
    } else {
      r.first = std::stoi(text.substr(0, pos));
      r.last = std::stoi(text.substr(pos + 2));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("--levels", "expected '<a>' or '<a>..<b>'");
  }
  if (r.first < 1 || r.last < r.first || r.last > 12)
    throw CLI::ValidationError("--levels", "levels must satisfy 1 <= a <= b <= 12");
  return r;
}

std::vector<int> parse_rules(const std::string& text) {
  std::vector<int> rules;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    int np = 0;
    try {
      np = std::stoi(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--rules", "expected a comma-separated subset of 1,4,9");
    }
    if (np != 1 && np != 4 && np != 9)
      throw CLI::ValidationError("--rules", "supported rules have 1, 4 or 9 points");
    if (std::find(rules.begin(), rules.end(), np) == rules.end()) rules.push_back(np);
  }
  if (rules.empty()) throw CLI::ValidationError("--rules", "at least one rule is required");
  std::sort(rules.begin(), rules.end());
  return rules;
}

bfs::Domain parse_domain(const std::vector<double>& d) {
  bfs::Domain dom{d[0], d[1], d[2], d[3]};
  bfs::check_domain(dom);
  return dom;
}

struct FunctionChoice {
  bfs::Poly2 v;
  bool is_quartic = false;
};

FunctionChoice resolve_function(const std::string& selector) {
  FunctionChoice out;
  if (selector == "quartic") {
    out.v = bfs::Poly2::quartic_bump();
    out.is_quartic = true;
    return out;
  }
  if (selector.rfind("poly:", 0) == 0) {
    const std::string path = selector.substr(5);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read coefficient file '" + path + "'");
    out.v = bfs::Poly2::parse(in);
    if (out.v.degree_x() < 0) throw std::runtime_error("polynomial file '" + path + "' is empty");
    return out;
  }
  throw std::runtime_error("unknown function selector '" + selector +
                           "' (use 'quartic' or 'poly:<coeff-file>')");
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write to " + (dir / name).string());
  return out;
}

fs::path prepare_out_dir(const Options& opt) {
  fs::path dir(opt.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string());
  return dir;
}

int level_elements(int level) { return 1 << level; }

void cmd_basis(const Options& opt) {
  const fs::path dir = prepare_out_dir(opt);

  {
    auto out = open_output(dir, "hermite_1d.csv");
    out << "xhat,H1,H2,H3,H4\n";
    const int samples = 101;
    for (int s = 0; s < samples; ++s) {
      const double t = static_cast<double>(s) / (samples - 1);
      const bfs::HermiteValues h = bfs::eval_ref(t, 0);
      out << bfs::format_double(t) << ',' << bfs::format_double(h[0]) << ','
          << bfs::format_double(h[1]) << ',' << bfs::format_double(h[2]) << ','
          << bfs::format_double(h[3]) << '\n';
    }
  }

  // 33 x 33 grid over the reference square; unit element size.
  std::vector<bfs::Point2> grid;
  const int n = 33;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      grid.push_back({static_cast<double>(i) / (n - 1), static_cast<double>(j) / (n - 1)});
  const bfs::ElementSize unit{1.0, 1.0};
  {
    auto out = open_output(dir, "bfs_basis_2d.csv");
    bfs::write_shape_table_csv(bfs::shapefun(grid, unit), grid, out);
  }
  {
    auto out = open_output(dir, "bfs_basis_2d_derivs.csv");
    bfs::write_deriv_table_csv(bfs::shapeder(grid, unit), grid, out);
  }
}

void cmd_field(const Options& opt) {
  const fs::path dir = prepare_out_dir(opt);
  const bfs::Domain dom = parse_domain(opt.domain);
  // Figure-style output defaults to level 4 unless --levels was given.
  const int level = opt.levels_given ? parse_levels(opt.levels).first : 4;
  const int n = level_elements(level);

  const bfs::RectMesh mesh = bfs::uniform_mesh(dom.xmin, dom.xmax, dom.ymin, dom.ymax, n, n);
  const FunctionChoice fn = resolve_function(opt.function);
  const bfs::C1Field field = bfs::interpolate(fn.v.to_analytic(), mesh);

  {
    auto out = open_output(dir, "mesh.txt");
    bfs::save_mesh(mesh, out);
  }
  {
    auto out = open_output(dir, "field.txt");
    bfs::save_field(field, out);
  }
  {
    auto out = open_output(dir, "element_values.csv");
    bfs::write_field_samples_csv(field, {0.5, 0.5}, out);
  }
  {
    auto out = open_output(dir, "element_midpoints.csv");
    bfs::write_element_midpoints_csv(mesh, out);
  }
  {
    auto out = open_output(dir, "edge_midpoints.csv");
    bfs::write_edge_midpoints_csv(mesh, out);
  }
  {
    auto out = open_output(dir, "edge_values.csv");
    bfs::write_edge_values_csv(field, out);
  }
  {
    auto out = open_output(dir, "field.vtk");
    bfs::write_vtk_structured(mesh, field, out);
  }
}

void cmd_ips(const Options& opt) {
  const fs::path dir = prepare_out_dir(opt);
  const bfs::Domain dom = parse_domain(opt.domain);
  const std::vector<int> rules = parse_rules(opt.rules);
  const bfs::RectMesh mesh = bfs::uniform_mesh(dom.xmin, dom.xmax, dom.ymin, dom.ymax, 2, 2);
  for (int np : rules) {
    const bfs::QuadratureRule rule = bfs::gauss_rule(np);
    {
      auto out = open_output(dir, "rule_" + std::to_string(np) + ".csv");
      bfs::write_rule_csv(rule, out);
    }
    {
      auto out = open_output(dir, "ips_" + std::to_string(np) + ".csv");
      bfs::write_mapped_rule_csv(mesh, rule, out);
    }
  }
}

void cmd_integrate(const Options& opt) {
  const fs::path dir = prepare_out_dir(opt);
  const bfs::Domain dom = parse_domain(opt.domain);
  const LevelRange levels = parse_levels(opt.levels);
  const std::vector<int> rules = parse_rules(opt.rules);

  const FunctionChoice fn = resolve_function(opt.function);
  const bfs::Poly2 f = bfs::Poly2::xxyy();
  const bfs::IntegralValues exact = bfs::exact_integrals(fn.v, f, dom);

  const bool default_domain = opt.domain[0] == -1.0 && opt.domain[1] == 1.0 &&
                              opt.domain[2] == -1.0 && opt.domain[3] == 1.0;
  const bool known_fractions = fn.is_quartic && default_domain;
  auto print_exact = [&](const char* name, double value, const char* fraction) {
    std::cout << "exact " << name << " = " << bfs::format_double(value);
    if (known_fractions) std::cout << "  (= " << fraction << ")";
    std::cout << "\n";
  };
  print_exact("||v||^2      ", exact.l2_sq, "65536/99225");
  print_exact("||grad v||^2 ", exact.h1_semi_sq, "131072/33075");
  print_exact("||grad2 v||^2", exact.h2_semi_sq, "65536/1225");
  print_exact("(f, v)       ", exact.load, "256/11025");

  const bfs::ConvergenceReport report = bfs::convergence_study(
      dom, fn.v.to_analytic(), f.to_analytic(), exact, levels.first, levels.last, rules);
  {
    auto out = open_output(dir, "report.csv");
    bfs::write_report_csv(report, out);
  }
  for (const bfs::StudyRow& row : report.rows) {
    if (row.level != levels.last) continue;
    std::cout << "level " << row.level << ", rule " << row.rule
              << ": errL2=" << bfs::format_double(row.abs_error.l2_sq)
              << " errH1=" << bfs::format_double(row.abs_error.h1_semi_sq)
              << " errH2=" << bfs::format_double(row.abs_error.h2_semi_sq)
              << " errLoad=" << bfs::format_double(row.abs_error.load) << "\n";
  }
  std::cout << "report written to " << (dir / "report.csv").string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bogner-Fox-Schmit C1 rectangular finite elements"};
  app.require_subcommand(1);
  app.footer("Kernel thread count follows OMP_NUM_THREADS.");

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--domain", opt.domain, "xmin xmax ymin ymax")->expected(4);
    sub->add_option("--levels", opt.levels, "refinement level or range 'a..b'");
    sub->add_option("--rules", opt.rules, "comma-separated subset of 1,4,9");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--function", opt.function, "'quartic' or 'poly:<coeff-file>'");
  };

  CLI::App* basis = app.add_subcommand("basis", "sample the 1D Hermite and 2D BFS basis");
  CLI::App* field = app.add_subcommand("field", "interpolate a function and dump its fields");
  CLI::App* ips = app.add_subcommand("ips", "Gauss points of each rule on the level-1 mesh");
  CLI::App* integrate = app.add_subcommand("integrate", "refinement convergence study");
  for (CLI::App* sub : {basis, field, ips, integrate}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    opt.levels_given = app.get_subcommands().front()->count("--levels") > 0;
    if (basis->parsed()) cmd_basis(opt);
    if (field->parsed()) cmd_field(opt);
    if (ips->parsed()) cmd_ips(opt);
    if (integrate->parsed()) cmd_integrate(opt);
  } catch (const bfs::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
