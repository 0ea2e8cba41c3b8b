// ortho: command line front end for the orthocount shared library.
//
// Subcommands mirror the library experiments; reports go to stdout (or
// --out) as CSV or JSON, progress and errors to stderr. Exit codes:
// 0 success, 2 invalid arguments, 3 capacity/stabilization failures.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ortho/capi.h"

namespace {

struct Output {
  std::string path;          // empty = stdout
  std::string format = "csv";
};

int emit(const Output& out, ortho_report* rep) {
  const char* text =
      out.format == "json" ? ortho_report_json(rep) : ortho_report_csv(rep);
  if (out.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out.path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot open output file: " << out.path << "\n";
      ortho_report_free(rep);
      return 2;
    }
    f << text;
  }
  double constant = 0, drift = 0;
  ortho_report_fit(rep, &constant, &drift);
  std::cerr << "fit constant " << constant << ", drift " << drift << "\n";
  ortho_report_free(rep);
  return 0;
}

int status_to_exit(ortho_status st) {
  if (st == ORTHO_OK) return 0;
  std::cerr << "error: " << ortho_last_error() << "\n";
  if (st == ORTHO_ERR_CAPACITY) return 3;
  return 2;
}

bool parse_form3(const std::string& text, std::int64_t* a, std::int64_t* b,
                 std::int64_t* c) {
  return std::sscanf(text.c_str(), "%ld,%ld,%ld", a, b, c) == 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"counting experiments in hyperbolic geometry and arithmetic"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  app.add_option("--out", out.path, "write the report to a file");
  app.add_option("--format", out.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  // ---- quad ----------------------------------------------------------------
  auto* quad = app.add_subcommand("quad", "binary quadratic forms");
  quad->require_subcommand(1);
  std::string form = "1,0,-2";
  double smax = 1000;
  int steps = 10;
  int samples = 1000;
  std::uint64_t seed = 1;

  auto* qcount = quad->add_subcommand("count", "primitive representation counts");
  qcount->add_option("--form", form, "a,b,c")->required();
  qcount->add_option("--smax", smax, "largest bound")->required();
  qcount->add_option("--steps", steps, "grid points");
  auto* qverify = quad->add_subcommand("verify-length",
                                       "two-route perpendicular length check");
  qverify->add_option("--form", form, "a,b,c")->required();
  qverify->add_option("--samples", samples, "number of matrices");
  qverify->add_option("--seed", seed, "random seed");
  auto* qirr = quad->add_subcommand("irrationals",
                                    "orbit quadratic irrationals by complexity");
  qirr->add_option("--form", form, "a,b,c")->required();
  qirr->add_option("--smax", smax, "largest complexity bound")->required();
  qirr->add_option("--steps", steps, "grid points");

  // ---- cusp ----------------------------------------------------------------
  auto* cusp = app.add_subcommand("cusp", "cusp-to-cusp counting");
  cusp->require_subcommand(1);
  std::int64_t dk = -4;
  auto* mertens = cusp->add_subcommand("mertens", "totient summatory counting");
  mertens->add_option("--smax", smax, "largest distance")->required();
  mertens->add_option("--steps", steps, "grid points");
  auto* bianchi = cusp->add_subcommand("bianchi", "imaginary quadratic analogue");
  bianchi->add_option("--dk", dk, "field discriminant (-3,-4,-7,-8,-11)")->required();
  bianchi->add_option("--smax", smax, "largest distance")->required();
  bianchi->add_option("--steps", steps, "grid points");

  // ---- orbit ---------------------------------------------------------------
  auto* orbit = app.add_subcommand("orbit", "orbit points in a ball");
  orbit->require_subcommand(1);
  std::string group = "psl2z";
  auto* ball = orbit->add_subcommand("ball", "matrix count by Frobenius norm");
  ball->add_option("--group", group, "psl2z or psl2zi")->required();
  ball->add_option("--smax", smax, "largest radius")->required();
  ball->add_option("--steps", steps, "grid points");

  // ---- herm ----------------------------------------------------------------
  auto* herm = app.add_subcommand("herm", "binary Hermitian forms over Z[i]");
  herm->require_subcommand(1);
  std::string hform = "1,0,0,-1";
  double bound = 400;
  double slack = 2;
  auto* hcount = herm->add_subcommand("count", "orbit circle counting");
  hcount->add_option("--form", hform, "a,b_re,b_im,c")->required();
  hcount->add_option("--bound", bound, "largest |a| bound")->required();
  hcount->add_option("--slack", slack, "BFS prune slack (>= 1)");
  hcount->add_option("--steps", steps, "grid points");

  // ---- const ---------------------------------------------------------------
  auto* konst = app.add_subcommand("const", "evaluate a named constant");
  std::string cname;
  std::string cparams;
  double da = 0;
  konst->add_option("name", cname, "constant name, or 'list'")->required();
  konst->add_option("--params", cparams, "comma separated key=value list");
  auto* da_opt = konst->add_option("--da", da, "quaternion algebra discriminant");

  // ---- quat ----------------------------------------------------------------
  auto* quat = app.add_subcommand("quat", "quaternion arithmetic");
  quat->add_subcommand("selftest", "Hurwitz and Dieudonne invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::int64_t fa = 0, fb = 0, fc = 0;
  ortho_report* rep = nullptr;
  if (qcount->parsed() || qverify->parsed() || qirr->parsed()) {
    if (!parse_form3(form, &fa, &fb, &fc)) {
      std::cerr << "error: --form expects a,b,c\n";
      return 2;
    }
  }

  if (qcount->parsed()) {
    const ortho_status st =
        ortho_run_quad_count(fa, fb, fc, smax, steps, threads, &rep);
    return st == ORTHO_OK ? emit(out, rep) : status_to_exit(st);
  }
  if (qverify->parsed()) {
    const ortho_status st =
        ortho_run_quad_verify_length(fa, fb, fc, samples, seed, &rep);
    if (st != ORTHO_OK) return status_to_exit(st);
    std::cerr << "max |arithmetic - geometric| = "
              << ortho_report_param(rep, "max_abs_diff") << "\n";
    return emit(out, rep);
  }
  if (qirr->parsed()) {
    const ortho_status st =
        ortho_run_quad_irrationals(fa, fb, fc, smax, steps, &rep);
    return st == ORTHO_OK ? emit(out, rep) : status_to_exit(st);
  }
  if (mertens->parsed()) {
    const ortho_status st = ortho_run_cusp_mertens(smax, steps, &rep);
    return st == ORTHO_OK ? emit(out, rep) : status_to_exit(st);
  }
  if (bianchi->parsed()) {
    const ortho_status st = ortho_run_cusp_bianchi(dk, smax, steps, &rep);
    return st == ORTHO_OK ? emit(out, rep) : status_to_exit(st);
  }
  if (ball->parsed()) {
    const ortho_status st =
        ortho_run_orbit_ball(group.c_str(), smax, steps, threads, &rep);
    return st == ORTHO_OK ? emit(out, rep) : status_to_exit(st);
  }
  if (hcount->parsed()) {
    std::int64_t ha = 0, hbre = 0, hbim = 0, hc = 0;
    if (std::sscanf(hform.c_str(), "%ld,%ld,%ld,%ld", &ha, &hbre, &hbim, &hc) != 4) {
      std::cerr << "error: --form expects a,b_re,b_im,c\n";
      return 2;
    }
    const ortho_status st = ortho_run_herm_count(ha, hbre, hbim, hc, bound,
                                                 slack, steps, threads, &rep);
    if (st != ORTHO_OK) return status_to_exit(st);
    std::cerr << "fitted exponent " << ortho_report_param(rep, "fitted_exponent")
              << "\n";
    return emit(out, rep);
  }
  if (konst->parsed()) {
    if (da_opt->count() > 0) {
      if (!cparams.empty()) cparams += ",";
      cparams += "da=" + std::to_string(da);
    }
    if (cname == "list") {
      const char** names = nullptr;
      int count = 0;
      ortho_const_names(&names, &count);
      for (int i = 0; i < count; ++i) std::cout << names[i] << "\n";
      return 0;
    }
    double value = 0;
    ortho_status st = ortho_const_eval(cname.c_str(), cparams.c_str(), &value);
    if (st != ORTHO_OK) return status_to_exit(st);
    std::cout << value << "\n";
    double err = 0;
    int has_check = 0;
    st = ortho_const_check(cname.c_str(), cparams.c_str(), &err, &has_check);
    if (st == ORTHO_OK && has_check)
      std::cerr << "specialization identity relative error " << err << "\n";
    return 0;
  }
  if (quat->parsed()) {
    char buf[160] = {0};
    const ortho_status st = ortho_quat_selftest(buf, sizeof buf);
    if (st != ORTHO_OK) return status_to_exit(st);
    std::cout << buf << "\n";
    return 0;
  }
  std::cerr << "no subcommand selected\n";
  return 2;
}
