// Command-line frontend: decompose Euler products into zeta/L products,
// report singularities, evaluate the continuation, verify decompositions.
//
// Exit codes: 0 success; 2 validation error (bad input, unsupported region);
// 3 correctness alarm (a theorem-backed invariant failed, i.e. a bug).

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "eulerprod/io.hpp"

using namespace eulerprod;

namespace {

struct JobConfig {
    std::string input;
    std::string decomposition;
    std::string suite;
    std::string format = "tsv";
    std::string orientation = "validated";
    int depth = 8;
    std::string epsilon;
    double s_start = 2.0, s_end = 2.0, s_step = 0.5, s_im = 0.0;
    double target_error = 1e-10;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run_decompose(const JobConfig& cfg) {
    Json j = load_json_file(cfg.input);
    if (json_is_frobenian_spec(j))
        throw ValidationError("this input is Frobenian; use frob-decompose");
    auto spec = euler_factor_from_json(j);
    Rational eps = cfg.epsilon.empty() ? Rational(0) : parse_rational(cfg.epsilon);
    if (!cfg.epsilon.empty() && (eps <= 0 || eps >= 1))
        throw ValidationError("epsilon must lie in (0,1)");
    if (cfg.depth < 1) throw ValidationError("depth must be >= 1");
    auto d = decompose(spec, cfg.depth, eps);
    if (!verify_decomposition(spec, d))
        throw CorrectnessAlarm("computed decomposition fails its defining identity");
    integrality(d, spec);  // raises the alarm on an integer-input violation
    emit(to_json(d));
    return 0;
}

int run_frob_decompose(const JobConfig& cfg) {
    Json j = load_json_file(cfg.input);
    if (!json_is_frobenian_spec(j))
        throw ValidationError("this input is constant-coefficient; use decompose");
    auto spec = frobenian_from_json(j);
    ROrientation orient = ROrientation::TensorOnPrior;
    if (cfg.orientation == "as-printed")
        orient = ROrientation::TensorOnTarget;
    else if (cfg.orientation != "validated")
        throw ValidationError("orientation must be 'validated' or 'as-printed'");
    auto d = compute_b_frob(spec, cfg.depth, orient);
    if (!specialization_oracle(spec, d))
        throw CorrectnessAlarm("Frobenian decomposition fails the specialization oracle");
    frob_integrality(d, spec);
    emit(to_json(d));
    return 0;
}

int run_abscissa(const JobConfig& cfg) {
    Json j = load_json_file(cfg.input);
    AbscissaResult r;
    if (json_is_frobenian_spec(j))
        r = abscissa(frobenian_from_json(j));
    else
        r = abscissa(euler_factor_from_json(j));
    Json out{{"kind", "abscissa"},
             {"abscissa", r.value.get_str()},
             {"trivial_factor", r.trivial_factor},
             {"warning", r.warning}};
    if (r.warning) out["warning_text"] = r.warning_text;
    emit(out);
    return 0;
}

int run_report(const JobConfig& cfg) {
    Json j = load_json_file(cfg.input);
    if (cfg.epsilon.empty()) throw ValidationError("report requires --epsilon");
    Rational eps = parse_rational(cfg.epsilon);
    if (eps <= 0 || eps >= 1) throw ValidationError("epsilon must lie in (0,1)");
    int depth = static_cast<int>(ceil_to_integer(Rational(1) / eps).get_si());
    if (json_is_frobenian_spec(j)) {
        auto spec = frobenian_from_json(j);
        auto d = compute_b_frob(spec, depth);
        emit(to_json(singularity_report(d, spec, eps)));
    } else {
        auto spec = euler_factor_from_json(j);
        auto d = decompose(spec, depth, eps);
        emit(to_json(singularity_report(d, spec, eps)));
    }
    return 0;
}

int run_evaluate(const JobConfig& cfg) {
    Json j = load_json_file(cfg.input);
    if (cfg.s_step <= 0) throw ValidationError("grid step must be positive");
    EvalOptions opts;
    opts.target_abs_err = cfg.target_error;

    auto eval_grid = [&](auto&& eval_one) {
        Json rows = Json::array();
        for (double sr = cfg.s_start; sr <= cfg.s_end + 1e-12; sr += cfg.s_step) {
            EvaluationResult r = eval_one(Complex(sr, cfg.s_im));
            if (cfg.format == "tsv") {
                if (r.at_singularity) {
                    std::printf("# at-singularity\t%.17g\t%.17g\n", sr, cfg.s_im);
                    continue;
                }
                std::printf("%.17g\t%.17g\t%.17g\t%.17g\t%.3g\n", sr, cfg.s_im, r.value.real(),
                            r.value.imag(), r.estimated_error);
            } else {
                Json row{{"re_s", sr}, {"im_s", cfg.s_im}};
                if (r.at_singularity)
                    row["at_singularity"] = true;
                else {
                    row["re_val"] = r.value.real();
                    row["im_val"] = r.value.imag();
                    row["err_est"] = r.estimated_error;
                    row["prime_cutoff"] = r.prime_cutoff;
                }
                rows.push_back(row);
            }
        }
        if (cfg.format != "tsv") emit(Json{{"kind", "evaluation"}, {"rows", rows}});
    };

    if (json_is_frobenian_spec(j)) {
        auto spec = frobenian_from_json(j);
        auto d = compute_b_frob(spec, cfg.depth);
        eval_grid([&](Complex s) { return continuation_eval(d, spec, s, opts); });
    } else {
        auto spec = euler_factor_from_json(j);
        auto d = decompose(spec, cfg.depth);
        eval_grid([&](Complex s) { return continuation_eval(d, spec, s, opts); });
    }
    return 0;
}

int run_verify_suite();

int run_verify(const JobConfig& cfg) {
    if (!cfg.suite.empty()) {
        if (cfg.suite != "all") throw ValidationError("only --suite all is defined");
        return run_verify_suite();
    }
    if (cfg.input.empty() || cfg.decomposition.empty())
        throw ValidationError("verify needs either --suite all or --input plus --decomposition");
    Json sj = load_json_file(cfg.input);
    Json dj = load_json_file(cfg.decomposition);
    if (json_is_frobenian_spec(sj)) {
        auto spec = frobenian_from_json(sj);
        auto d = frob_decomposition_from_json(dj);
        if (!specialization_oracle(spec, d))
            throw CorrectnessAlarm("decomposition does not satisfy the specialization identity");
    } else {
        auto spec = euler_factor_from_json(sj);
        auto d = zeta_decomposition_from_json(dj);
        if (!verify_decomposition(spec, d))
            throw CorrectnessAlarm("decomposition does not satisfy the defining identity");
    }
    std::cout << "ok - decomposition verified against " << cfg.input << "\n";
    return 0;
}

int checks_run = 0;

void check(bool ok, const std::string& name) {
    if (!ok) throw CorrectnessAlarm("verify suite failed: " + name);
    ++checks_run;
    std::cout << "ok - " << name << "\n";
}

int run_verify_suite() {
    checks_run = 0;
    for (const auto& t : tables::bundled()) {
        t.validate();
        ++checks_run;
        std::cout << "ok - character table " << t.name << " orthogonality\n";
    }

    {
        auto spec = EulerFactorSpec::make(
            FactorKind::Polynomial, {GaussianRational(1), GaussianRational(2)}, {});
        auto d = decompose(spec, 6, Rational(1, 6));
        std::vector<long> expected = {2, -3, 2, -3, 6, -11};
        bool ok = true;
        for (int n = 1; n <= 6; ++n) ok &= d.b[n - 1] == GaussianRational(expected[n - 1]);
        check(ok && verify_decomposition(spec, d), "zeta-product exponents of 1 + 2z");
        check(d.exceptional_prime_bound == 64, "exceptional prime bound of 1 + 2z");
    }

    {
        TruncatedSeries<Rational> q(10, Rational(1));
        for (int k = 1; k <= 10; ++k) {
            Rational c(2 * k - 7, k + 1);
            c.canonicalize();
            q.set_coeff(k, c);
        }
        check(series_exp(series_log(q)) == q, "series log/exp round trip");
    }

    {
        bool ok = true;
        for (unsigned long i = 0; i <= 6 && ok; ++i)
            for (unsigned long j = 0; i + j <= 6 && ok; ++j) {
                if (i + j == 0) continue;
                ok = log_coeff({i, j}) == orbit_count({i, j});
            }
        check(ok, "log-coefficient formula vs orbit-counting oracle");
    }

    {
        FrobenianFactorSpec spec;
        spec.table = tables::c2();
        spec.coeffs = {ClassFunction({Cyclotomic(Rational(4)), Cyclotomic(Rational(0))})};
        auto d = compute_b_frob(spec, 6);
        check(specialization_oracle(spec, d) && frob_integrality(d, spec).integral,
              "split-primes factor over C2: oracle and integrality");
    }

    {
        auto s3 = tables::s3();
        FrobenianFactorSpec spec;
        spec.table = s3;
        spec.coeffs = {ClassFunction::constant(3, Cyclotomic()), s3.irreducibles[2],
                       ClassFunction::constant(3, Cyclotomic(Rational(2)))};
        auto d = compute_b_frob(spec, 6);
        check(specialization_oracle(spec, d) && d.b[1][2] == Cyclotomic(Rational(1)),
              "two-torsion factor over S3: oracle and L(2s) exponent");
    }

    {
        auto z2 = zeta_eval({2.0, 0.0});
        double pi = 3.14159265358979323846;
        check(std::abs(z2.value.real() - pi * pi / 6.0) < 1e-10, "zeta(2) = pi^2/6");
        DirichletCharacter chi;
        chi.modulus = 4;
        chi.values = {{0, 0}, {1, 0}, {0, 0}, {-1, 0}};
        chi.principal = false;
        auto L1 = dirichlet_L({1.0, 0.0}, chi);
        check(std::abs(L1.value.real() - pi / 4.0) < 1e-9, "L(1, chi_4) = pi/4");
    }

    std::cout << "passed " << checks_run << "/" << checks_run << " checks\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euler product factorization: zeta-product decompositions, "
                 "singularity reports, and numeric continuation"};
    app.require_subcommand(1);
    JobConfig cfg;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "spec file (JSON)")->required();
    };

    CLI::App* dec = app.add_subcommand("decompose", "constant-coefficient zeta-product exponents");
    add_input(dec);
    dec->add_option("--depth", cfg.depth, "truncation depth N");
    dec->add_option("--epsilon", cfg.epsilon, "half-plane parameter for the prime bound");

    CLI::App* fdec = app.add_subcommand("frob-decompose", "Frobenian L-product exponents");
    add_input(fdec);
    fdec->add_option("--depth", cfg.depth, "truncation depth N");
    fdec->add_option("--orientation", cfg.orientation,
                     "r-recursion inner-product orientation: validated | as-printed");

    CLI::App* rep = app.add_subcommand("report", "singularity locations and orders on Re(s) > eps");
    add_input(rep);
    rep->add_option("--epsilon", cfg.epsilon, "report window Re(s) > epsilon")->required();

    CLI::App* abs_cmd = app.add_subcommand("abscissa", "abscissa of absolute convergence");
    add_input(abs_cmd);

    CLI::App* ev = app.add_subcommand("evaluate", "numeric continuation on an s-grid");
    add_input(ev);
    ev->add_option("--depth", cfg.depth, "decomposition depth N");
    ev->add_option("--s-start", cfg.s_start, "grid start (real part)");
    ev->add_option("--s-end", cfg.s_end, "grid end (real part)");
    ev->add_option("--s-step", cfg.s_step, "grid step");
    ev->add_option("--im", cfg.s_im, "fixed imaginary part");
    ev->add_option("--format", cfg.format, "tsv | json");
    ev->add_option("--target-error", cfg.target_error, "requested absolute accuracy");

    CLI::App* ver = app.add_subcommand("verify", "verification suites / re-check a decomposition");
    ver->add_option("--suite", cfg.suite, "'all' runs the built-in checks");
    ver->add_option("--input", cfg.input, "spec file to verify against");
    ver->add_option("--decomposition", cfg.decomposition, "decomposition output to re-check");

    try {
        app.parse(argc, argv);
        if (dec->parsed()) return run_decompose(cfg);
        if (fdec->parsed()) return run_frob_decompose(cfg);
        if (rep->parsed()) return run_report(cfg);
        if (abs_cmd->parsed()) return run_abscissa(cfg);
        if (ev->parsed()) return run_evaluate(cfg);
        if (ver->parsed()) return run_verify(cfg);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const CorrectnessAlarm& e) {
        std::cerr << "error: kind=correctness-alarm reason=\"" << e.what() << "\"\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: kind=validation reason=\"" << e.what() << "\"\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: kind=internal reason=\"" << e.what() << "\"\n";
        return 2;
    }
}
