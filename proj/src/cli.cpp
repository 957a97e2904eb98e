#include "wovf/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <sstream>

#include "wovf/corpus.hpp"
#include "wovf/duality.hpp"
#include "wovf/io.hpp"
#include "wovf/perturb.hpp"

namespace wovf::cli {
namespace {

struct Row {
  std::string name;
  std::string statement;
  std::string measure;
  double value = 0.0;
  std::string relation;  // "<=" or ">="
  double bound = 0.0;
  bool pass = false;
  bool counted = true;
};

std::string sci(double x) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << x;
  return s.str();
}

void print_rows(std::ostream& out, const std::vector<Row>& rows) {
  for (const Row& r : rows) {
    const std::string status = !r.counted ? (r.pass ? "yes " : "no  ") : (r.pass ? "PASS" : "FAIL");
    out << status << "  " << std::left << std::setw(18) << r.name << std::setw(34) << r.measure
        << std::right << std::setw(11) << sci(r.value) << ' ' << r.relation << ' '
        << std::setw(10) << sci(r.bound) << "   " << r.statement << '\n';
  }
}

Row upper_row(std::string name, std::string statement, std::string measure, double value,
              double bound, bool counted = true) {
  return {std::move(name), std::move(statement), std::move(measure), value, "<=", bound,
          value <= bound, counted};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError("cannot parse " + what + " '" + text + "'");
  }
  if (used != text.size()) throw InputError("cannot parse " + what + " '" + text + "'");
  return value;
}

// Defaults, then the file, then OVF_TOLERANCE, then --tolerance.
Tolerance resolve_tolerance(const FrameFile& file, const std::optional<double>& flag) {
  Tolerance tol = file.tolerance.value_or(Tolerance{});
  if (const char* env = std::getenv("OVF_TOLERANCE"); env != nullptr && *env != '\0')
    tol.residual_eps = parse_real(env, "OVF_TOLERANCE");
  if (flag) tol.residual_eps = *flag;
  try {
    tol.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return tol;
}

FrameFile load(const std::string& path, const std::optional<double>& flag) {
  FrameFile file = read_frame_file(path);
  file.frame = file.frame.with_tolerance(resolve_tolerance(file, flag));
  return file;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-")
    out << text;
  else
    write_text(path, text);
}

FrameFile plain(WeakOvf frame, std::optional<Tolerance> tol) {
  return FrameFile{std::move(frame), tol, {}, {}, {}, {}};
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string kind;
  long d = 0, d0 = 0, n = 0;
  std::uint64_t seed = 0;
  std::string group = "cyclic:2";
  std::string system = "iz2";
  bool asymmetric = false;
  std::string out = "-";
};

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  if (a.d < 1 || a.d0 < 1) throw InputError("--d and --d0 must be positive");
  const auto count = [&]() -> std::size_t {
    if (a.n < 1) throw InputError("--N must be positive");
    return static_cast<std::size_t>(a.n);
  };
  std::optional<FrameFile> file;
  bool ok = false;
  std::string claim;
  try {
    if (a.kind == "weak") {
      file = plain(random_weak(a.d, a.d0, count(), a.seed), std::nullopt);
      ok = classify(file->frame).is_weak;
      claim = "weak";
    } else if (a.kind == "parseval") {
      file = plain(random_parseval(a.d, a.d0, count(), a.seed, !a.asymmetric), std::nullopt);
      ok = classify(file->frame).is_parseval;
      claim = "Parseval";
    } else if (a.kind == "operator-onb") {
      file = plain(random_operator_onb_frame(a.d, a.d0, count(), a.seed), std::nullopt);
      ok = classify(file->frame).is_orthonormal;
      claim = "orthonormal";
    } else if (a.kind == "group") {
      const FiniteGroup g = named_group(a.group);
      if (a.n != 0 && static_cast<std::size_t>(a.n) != g.order())
        throw InputError("--N must equal the group order");
      GroupFrameSample s = random_group_frame(g, a.d, a.d0, a.seed);
      file = plain(std::move(s.frame), std::nullopt);
      file->group = g;
      ok = classify(file->frame).is_parseval && check_shift_conditions(file->frame, g).passed;
      claim = "Parseval group-generated";
    } else if (a.kind == "grouplike") {
      const GroupLikeSystem sys = named_system(a.system);
      if (a.n != 0 && static_cast<std::size_t>(a.n) != sys.size())
        throw InputError("--N must equal the system size");
      GroupLikeFrameSample s = random_grouplike_frame(sys, a.d, a.d0, a.seed);
      file = plain(std::move(s.frame), std::nullopt);
      file->grouplike = sys;
      ok = classify(file->frame).is_parseval &&
           check_grouplike_conditions(file->frame, sys).passed;
      claim = "Parseval grouplike-generated";
    } else {
      throw InputError("unknown --kind '" + a.kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (!ok) {
    err << "generated frame is not " << claim << "\n";
    return kCheckFailed;
  }
  emit(a.out, serialize(*file), out);
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string file;
  std::string checks = "all";
  std::string dual;
  std::optional<double> tolerance;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream&) {
  const FrameFile file = load(a.file, a.tolerance);
  const WeakOvf& f = file.frame;
  const Tolerance& tol = f.tol();
  const double eps = tol.loose();

  std::vector<std::string> wanted = split_list(a.checks);
  const bool all = wanted.empty() || (wanted.size() == 1 && wanted[0] == "all");
  const auto want = [&](const std::string& c) {
    return std::find(wanted.begin(), wanted.end(), c) != wanted.end();
  };
  static const std::vector<std::string> known{"all",  "factor", "parseval", "riesz",
                                              "dual", "shift",  "grouplike", "perturb"};
  for (const std::string& c : wanted)
    if (std::find(known.begin(), known.end(), c) == known.end())
      throw InputError("unknown check '" + c + "'");

  std::vector<Row> rows;
  const Op s = frame_operator(f);
  const double inv_cond = num::inverse_condition(s);
  const bool weak = num::passes_invertibility(s, tol);
  rows.push_back({"weak", "S = sum Psi_n* A_n is bounded invertible", "sigma_min/sigma_max(S)",
                  inv_cond, ">=", tol.invert_eps, weak, true});

  if (all || want("factor")) {
    const Op ta = theta_A(f), tp = theta_Psi(f);
    rows.push_back(upper_row("factorization", "S = theta_Psi* theta_A", "||S - theta_Psi* theta_A||",
                             num::spectral_norm(s - tp.adjoint() * ta), eps));
    if (weak) {
      const Op p = idempotent_P(f);
      rows.push_back(upper_row("idempotent", "P = theta_A S^-1 theta_Psi* is idempotent onto range(theta_A)",
                               "||P^2 - P||", num::spectral_norm(p * p - p), eps));
    }
  }
  if (all || want("parseval")) {
    rows.push_back(upper_row("parseval", "S = I", "||S - I||",
                             num::spectral_norm(s - num::identity(f.d())), eps, !all));
  }
  if ((all || want("riesz")) && weak) {
    const Op p = idempotent_P(f);
    rows.push_back(upper_row("riesz", "P = I (Riesz basis)", "||P - I||",
                             num::spectral_norm(p - num::identity(p.rows())), eps, !all));
  }
  if (want("dual") || (all && !a.dual.empty())) {
    if (a.dual.empty()) throw InputError("--checks dual needs --dual FILE");
    const FrameFile other = read_frame_file(a.dual);
    const auto [psi_b, phi_a] = mixed_frame_operators(f, other.frame);
    const Op eye = num::identity(f.d());
    const double res = std::max(num::spectral_norm(psi_b - eye), num::spectral_norm(phi_a - eye));
    rows.push_back(upper_row("dual", "sum Psi_n* B_n = I = sum Phi_n* A_n",
                             "max ||mixed - I||", res, eps));
  }
  if (want("shift") || (all && file.group)) {
    if (!file.group) throw InputError("--checks shift needs a group block");
    const ShiftReport r = check_shift_conditions(f, *file.group);
    rows.push_back(upper_row("shift", "X_gp Y_gq* = X_p Y_q* for X, Y in {A, Psi}",
                             "max shift residual", r.max_residual, eps));
  }
  if (want("grouplike") || (all && file.grouplike)) {
    if (!file.grouplike) throw InputError("--checks grouplike needs a grouplike block");
    const SystemReport sys = validate_system(*file.grouplike);
    rows.push_back({"system-axioms", sys.ok ? "phased table satisfies the cocycle axioms" : sys.violation,
                    "violations", sys.ok ? 0.0 : 1.0, "<=", 0.0, sys.ok, true});
    const ShiftReport r = check_grouplike_conditions(f, *file.grouplike);
    rows.push_back(upper_row("grouplike", "X_s(UV) Y_s(UW)* = f(UV) conj(f(UW)) X_V Y_W*",
                             "max phased residual", r.max_residual, eps));
  }
  if (want("perturb") || (all && file.perturbation)) {
    if (!file.perturbation) throw InputError("--checks perturb needs a perturbation block");
    const PerturbCert cert = perturbation_constants(f, *file.perturbation);
    if (!cert.any_path()) {
      rows.push_back({"perturb", "no perturbation hypothesis holds", "mixed sum", cert.mixed_sum,
                      "<", 1.0, false, true});
    } else {
      try {
        const PerturbReport r = verify_perturbation(f, *file.perturbation);
        rows.push_back({"perturb", "(B, Psi) is weak with the predicted bounds",
                        "measured_lower - theoretical_lower",
                        r.measured_lower - r.cert.theoretical_lower, ">=", -eps, true, true});
      } catch (const TheoremViolated& e) {
        rows.push_back({"perturb", e.what(), "bound margin", -1.0, ">=", -eps, false, true});
      }
    }
  }

  print_rows(out, rows);
  const bool pass = std::all_of(rows.begin(), rows.end(),
                                [](const Row& r) { return r.pass || !r.counted; });
  out << (pass ? "all requested checks passed" : "some checks failed") << '\n';
  return pass ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- others

int cmd_dual(const std::string& in, const std::string& dst, std::optional<std::uint64_t> seed,
             const std::optional<double>& flag, std::ostream& out) {
  const FrameFile file = load(in, flag);
  const WeakOvf& f = file.frame;
  WeakOvf g = canonical_dual(f);
  if (seed) {
    Rng rng(*seed);
    const Eigen::Index big = static_cast<Eigen::Index>(f.size()) * f.d0();
    const Op u = 0.5 * num::random_op(big, f.d(), rng);
    const Op v = 0.5 * num::random_op(f.d(), big, rng);
    g = dual_from_parameters(f, u, v);
  }
  is_dual(f, g);
  emit(dst, serialize(plain(std::move(g), file.tolerance)), out);
  return kOk;
}

int cmd_dilate(const std::string& in, const std::string& dst, const std::optional<double>& flag,
               std::ostream& out) {
  const FrameFile file = load(in, flag);
  const Dilation dil = dilate(file.frame);
  FrameFile result = plain(dil.as_frame(file.frame.tol()), file.tolerance);
  result.embed = dil.embed;
  emit(dst, serialize(result), out);
  return kOk;
}

int cmd_similar(const std::string& first, const std::string& second, const std::string& dst,
                const std::optional<double>& flag, std::ostream& out) {
  const FrameFile f = load(first, flag);
  const FrameFile g = load(second, flag);
  const SimilarityWitness w = similarity_witness(f.frame, g.frame);
  emit(dst, witness_to_json(w).dump(1) + "\n", out);
  return kOk;
}

int cmd_reconstruct(const std::string& in, const std::string& dst,
                    const std::optional<double>& flag, std::ostream& out) {
  const FrameFile file = load(in, flag);
  if (file.group) {
    const Representation rep = reconstruct_representation(file.frame, *file.group);
    emit(dst, representation_to_json(rep).dump(1) + "\n", out);
  } else if (file.grouplike) {
    const GroupLikeRepresentation rep =
        reconstruct_grouplike_representation(file.frame, *file.grouplike);
    emit(dst, representation_to_json(rep).dump(1) + "\n", out);
  } else {
    throw InputError("reconstruct needs a group or grouplike block");
  }
  return kOk;
}

struct PerturbArgs {
  std::string file;
  std::string budgets = "0.1,0.5,0.9,0.99";
  std::size_t seeds = 25;
  std::uint64_t first_seed = 0;
  std::string csv = "-";
  std::optional<double> tolerance;
};

int cmd_perturb(const PerturbArgs& a, std::ostream& out, std::ostream& err) {
  const FrameFile file = load(a.file, a.tolerance);
  std::vector<double> budgets;
  for (const std::string& b : split_list(a.budgets)) {
    const double x = parse_real(b, "budget");
    if (!(x > 0.0 && x < 1.0)) throw InputError("budgets must lie in (0, 1)");
    budgets.push_back(x);
  }
  bool violated = false;
  if (file.perturbation) {
    try {
      verify_perturbation(file.frame, *file.perturbation);
    } catch (const TheoremViolated& e) {
      err << "stored perturbation: " << e.what() << '\n';
      violated = true;
    }
  }
  const std::vector<TightnessRow> rows =
      tightness_table(file.frame, budgets, a.seeds, a.first_seed);
  std::ostringstream csv;
  write_tightness_csv(csv, rows);
  emit(a.csv, csv.str(), out);
  for (const TightnessRow& r : rows) violated = violated || r.violated;
  return violated ? kCheckFailed : kOk;
}

int cmd_report(const std::string& in, const std::optional<double>& flag, std::ostream& out) {
  const FrameFile file = load(in, flag);
  const WeakOvf& f = file.frame;
  const FrameReport r = classify(f);
  out << "dims            d = " << f.d() << ", d0 = " << f.d0() << ", N = " << f.size() << '\n';
  out << "tolerance       residual_eps = " << f.tol().residual_eps
      << ", invert_eps = " << f.tol().invert_eps << '\n';
  out << "weak            " << (r.is_weak ? "yes" : "no") << '\n';
  if (r.is_weak)
    out << "optimal bounds  a = " << *r.lower_bound << ", b = " << *r.upper_bound << '\n';
  out << "parseval        " << (r.is_parseval ? "yes" : "no") << "  (||S - I|| = "
      << sci(r.parseval_residual) << ")\n";
  out << "riesz           " << (r.is_riesz ? "yes" : "no");
  if (r.riesz_residual) out << "  (||P - I|| = " << sci(*r.riesz_residual) << ")";
  out << '\n';
  out << "orthonormal     " << (r.is_orthonormal ? "yes" : "no") << '\n';
  out << "factorization   ||S - theta_Psi* theta_A|| = " << sci(r.factorization_residual) << '\n';
  out << "range mismatch  " << sci(range_mismatch(f)) << '\n';
  if (file.group) out << "group           order " << file.group->order() << '\n';
  if (file.grouplike)
    out << "grouplike       size " << file.grouplike->size() << ", phase_order "
        << file.grouplike->phase_order() << '\n';
  if (file.perturbation) out << "perturbation    stored B sequence\n";
  if (file.embed) out << "dilation        embedding " << file.embed->rows() << " x "
                      << file.embed->cols() << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-dimensional weak operator-valued frame toolkit", "ovf"};
  app.require_subcommand(1);
  std::optional<double> tolerance;
  const auto add_tolerance = [&](CLI::App* sub) {
    sub->add_option("--tolerance", tolerance, "override residual_eps");
  };

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a random frame of a given class");
  g->add_option("--kind", gen.kind, "parseval|weak|group|grouplike|operator-onb")->required();
  g->add_option("--d", gen.d, "dimension of H")->required();
  g->add_option("--d0", gen.d0, "dimension of H0")->required();
  g->add_option("--N", gen.n, "number of operators (group kinds: optional)");
  g->add_option("--seed", gen.seed, "random seed");
  g->add_option("--group", gen.group, "trivial|klein|cyclic:n|dihedral:n");
  g->add_option("--system", gen.system, "iz2|pauli|heisenberg:n or a group name");
  g->add_flag("--asymmetric", gen.asymmetric, "parseval: Psi differs from A");
  g->add_option("--out", gen.out, "output file, - for stdout");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "check frame identities");
  v->add_option("file", ver.file)->required();
  v->add_option("--checks", ver.checks,
                "all|factor|parseval|riesz|dual|shift|grouplike|perturb, comma separated");
  v->add_option("--dual", ver.dual, "candidate dual frame file");
  add_tolerance(v);

  std::string in, in2, dst = "-";
  std::optional<std::uint64_t> dual_seed;
  auto* du = app.add_subcommand("dual", "canonical or parameterized dual");
  du->add_option("file", in)->required();
  du->add_option("--out", dst);
  du->add_option("--seed", dual_seed, "draw a parameterized dual instead of the canonical one");
  add_tolerance(du);

  auto* di = app.add_subcommand("dilate", "orthonormal dilation of a Parseval frame");
  di->add_option("file", in)->required();
  di->add_option("--out", dst);
  add_tolerance(di);

  auto* si = app.add_subcommand("similar", "similarity witness between two frames");
  si->add_option("first", in)->required();
  si->add_option("second", in2)->required();
  si->add_option("--out", dst);
  add_tolerance(si);

  auto* re = app.add_subcommand("reconstruct", "representation behind a group-indexed frame");
  re->add_option("file", in)->required();
  re->add_option("--out", dst);
  add_tolerance(re);

  PerturbArgs per;
  auto* pe = app.add_subcommand("perturb", "perturbation tightness table");
  pe->add_option("file", per.file)->required();
  pe->add_option("--budgets", per.budgets, "comma separated budget fractions");
  pe->add_option("--seeds", per.seeds, "seeds per budget");
  pe->add_option("--first-seed", per.first_seed);
  pe->add_option("--csv", per.csv, "CSV output, - for stdout");
  add_tolerance(pe);

  auto* rp = app.add_subcommand("report", "human-readable classification");
  rp->add_option("file", in)->required();
  add_tolerance(rp);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*g) return cmd_gen(gen, out, err);
    if (*v) {
      ver.tolerance = tolerance;
      return cmd_verify(ver, out, err);
    }
    if (*du) return cmd_dual(in, dst, dual_seed, tolerance, out);
    if (*di) return cmd_dilate(in, dst, tolerance, out);
    if (*si) return cmd_similar(in, in2, dst, tolerance, out);
    if (*re) return cmd_reconstruct(in, dst, tolerance, out);
    if (*pe) {
      per.tolerance = tolerance;
      return cmd_perturb(per, out, err);
    }
    if (*rp) return cmd_report(in, tolerance, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const ShapeMismatch& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "check failed: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kInputError;
}

}  // namespace wovf::cli
