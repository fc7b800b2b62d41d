#include "posred/cli/commands.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "posred/cli/generator.hpp"
#include "posred/cli/system_io.hpp"
#include "posred/monotone.hpp"
#include "posred/pipeline.hpp"

namespace posred::cli {

namespace {

struct CommonOptions {
    std::string input;
    std::string output;
    std::optional<double> tol;
    std::optional<double> rank_tol;
    std::optional<double> nonneg_tol;
    std::string space = "reachable";
    std::uint64_t budget = kDefaultSubsetBudget;
    std::optional<Index> horizon;
    std::optional<std::uint64_t> seed;
    bool force_algebraic = false;
    std::string format = "json";
    int jobs = 1;

    Tolerances tolerances() const {
        Tolerances t;
        if (tol) {
            t.eq_tol = *tol;
            t.rank_tol = *tol / 100.0;
            t.nonneg_tol = *tol / 10.0;
        }
        if (rank_tol) {
            t.rank_tol = *rank_tol;
        }
        if (nonneg_tol) {
            t.nonneg_tol = *nonneg_tol;
        }
        t.validate();
        return t;
    }

    bool text() const { return format == "text"; }
};

std::shared_ptr<spdlog::logger> logger() {
    static std::shared_ptr<spdlog::logger> log = [] {
        auto l = spdlog::stderr_color_mt("posred");
        l->set_pattern("posred [%l] %v");
        spdlog::level::level_enum level = spdlog::level::warn;
        if (const char* env = std::getenv("POSRED_LOG")) {
            level = spdlog::level::from_str(env);
            if (level == spdlog::level::off && std::string(env) != "off") {
                level = spdlog::level::warn;
            }
        }
        l->set_level(level);
        return l;
    }();
    return log;
}

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--input", o.input, "Input JSON file");
    cmd->add_option("--output", o.output, "Write the result here instead of stdout");
    cmd->add_option("--tol", o.tol, "Equality tolerance (rank_tol = tol/100, nonneg_tol = tol/10)");
    cmd->add_option("--rank-tol", o.rank_tol, "Relative rank tolerance");
    cmd->add_option("--nonneg-tol", o.nonneg_tol, "Non-negativity tolerance");
    cmd->add_option("--space", o.space, "reachable | observable")
        ->check(CLI::IsMember({"reachable", "observable"}));
    cmd->add_option("--budget", o.budget, "Maximum number of row subsets to scan");
    cmd->add_option("--horizon", o.horizon, "Markov comparison horizon");
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_flag("--force-algebraic", o.force_algebraic, "Skip the minimal route");
    cmd->add_option("--format", o.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--jobs", o.jobs, "Worker threads for batch runs")->check(CLI::PositiveNumber);
}

void emit(const CommonOptions& o, std::ostream& out, const std::string& text) {
    if (o.output.empty()) {
        out << text;
    } else {
        write_text_file(o.output, text);
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_matrix(const Matrix& m) {
    std::ostringstream s;
    for (Index i = 0; i < m.rows(); ++i) {
        s << "  [";
        for (Index j = 0; j < m.cols(); ++j) {
            s << (j ? ", " : "") << std::setw(10) << m(i, j);
        }
        s << "]\n";
    }
    return s.str();
}

void require_input(const CommonOptions& o) {
    if (o.input.empty()) {
        throw ParseError("--input is required");
    }
}

ReductionOptions reduction_options(const CommonOptions& o) {
    ReductionOptions r;
    r.tol = o.tolerances();
    r.budget = o.budget;
    r.seed = o.seed;
    r.force_algebraic = o.force_algebraic;
    r.horizon = o.horizon;
    return r;
}

// Subspace named by an input document: the columns of a bare matrix, or the
// reachable/observable space of a system file.
SubspaceBasis subspace_from_input(const json& doc, const CommonOptions& o, const Tolerances& tol) {
    if (doc.is_array()) {
        return select_independent_columns(matrix_from_json(doc, "matrix"), tol).basis;
    }
    const PositiveLtiSystem s = system_from_json(doc, tol);
    if (o.space == "observable") {
        return select_independent_columns(observability_matrix(s).transpose(), tol).basis;
    }
    return select_independent_columns(reachability_matrix(s), tol).basis;
}

int cmd_reduce(const CommonOptions& o, std::ostream& out) {
    require_input(o);
    const ReductionOptions ropts = reduction_options(o);
    const PositiveLtiSystem s = system_from_json(read_json_file(o.input), ropts.tol);
    logger()->info("reducing {}-state system onto the {} space", s.states(), o.space);
    const ReductionReport report =
        o.space == "observable" ? rpmr_observable(s, ropts) : rpmr_reachable(s, ropts);
    for (const std::string& d : report.diagnostics) {
        logger()->debug("{}", d);
    }

    if (o.text()) {
        std::ostringstream t;
        t << "method: " << to_string(report.method) << "\n"
          << "space: " << to_string(report.space) << "\n"
          << "original_dim: " << report.original_dim << "\n"
          << "reduced_dim: " << report.reduced_dim << "\n";
        if (report.reduced_system) {
            t << "A_r:\n" << format_matrix(report.reduced_system->A()) << "B_r:\n"
              << format_matrix(report.reduced_system->B()) << "C_r:\n"
              << format_matrix(report.reduced_system->C());
            t << "verification: markov_match=" << report.verification.markov_match
              << " positivity=" << report.verification.positivity << " horizon=" << report.verification.horizon
              << "\n";
        }
        for (const std::string& d : report.diagnostics) {
            t << "note: " << d << "\n";
        }
        emit(o, out, t.str());
    } else {
        emit(o, out, dump(report_to_json(report)));
    }
    return report.method == ReductionMethod::None ? kExitNegative : kExitOk;
}

int cmd_monotone(const CommonOptions& o, std::ostream& out) {
    require_input(o);
    const Tolerances tol = o.tolerances();
    const Matrix x = matrix_from_json(read_json_file(o.input), "matrix");
    MonotoneCertificate cert;
    std::string_view method;
    const bool shortcut = x.size() > 0 && is_nonneg(x, tol) && x.rows() >= x.cols() && rank(x, tol) == x.cols();
    if (shortcut) {
        cert = is_monotone_nonneg_rect(x, tol);
        method = "nonneg-combinatorial";
    } else {
        cert = is_monotone_general(x, tol);
        method = "general-oracle";
    }
    if (o.text()) {
        std::ostringstream t;
        t << (cert.monotone ? "monotone" : "not monotone") << " (" << method << ")\n";
        if (cert.nonneg_left_inverse) {
            t << "left inverse:\n" << format_matrix(*cert.nonneg_left_inverse);
        }
        emit(o, out, t.str());
    } else {
        emit(o, out, dump(certificate_to_json(cert, method)));
    }
    return cert.monotone ? kExitOk : kExitNegative;
}

int cmd_factorize(const CommonOptions& o, std::ostream& out) {
    require_input(o);
    const Tolerances tol = o.tolerances();
    const SubspaceBasis v = subspace_from_input(read_json_file(o.input), o, tol);
    const std::optional<Factorization> f = find_nonneg_factorization(v, tol, o.budget);
    json j;
    j["found"] = f.has_value();
    j["dim"] = v.dim();
    j["ambient_dim"] = v.ambient_dim();
    j["J"] = f ? matrix_to_json(f->J) : json(nullptr);
    j["Jdag"] = f ? matrix_to_json(f->Jdag) : json(nullptr);
    j["pivot_rows"] = f ? json(f->pivot_rows) : json(nullptr);
    if (o.text()) {
        std::ostringstream t;
        t << (f ? "non-negative factorization found" : "no non-negative factorization exists") << " (dim "
          << v.dim() << " in R^" << v.ambient_dim() << ")\n";
        if (f) {
            t << "J:\n" << format_matrix(f->J) << "Jdag:\n" << format_matrix(f->Jdag);
        }
        emit(o, out, t.str());
    } else {
        emit(o, out, dump(j));
    }
    return f ? kExitOk : kExitNegative;
}

int cmd_algebra(const CommonOptions& o, std::ostream& out) {
    require_input(o);
    const Tolerances tol = o.tolerances();
    const SubspaceBasis v = subspace_from_input(read_json_file(o.input), o, tol);
    if (v.dim() == 0) {
        throw Error(ErrorKind::ZeroMatrix, "subspace is zero");
    }
    const ReferenceVector p = choose_p(v, o.seed, tol);
    const DistortedAlgebra alg = closure(v, p, tol);
    const Factorization f = algebra_factorization(alg, tol);
    json j;
    j["subspace_dim"] = v.dim();
    j["algebra_dim"] = alg.dim();
    j["is_algebra"] = alg.dim() == v.dim();
    j["p"] = std::vector<double>(p.values().data(), p.values().data() + p.size());
    j["blocks"] = alg.blocks;
    j["generators"] = matrix_to_json(alg.generators);
    j["J"] = matrix_to_json(f.J);
    j["Jdag"] = matrix_to_json(f.Jdag);
    if (o.text()) {
        std::ostringstream t;
        t << "algebra dimension " << alg.dim() << " (subspace dimension " << v.dim() << ")\n"
          << "generators:\n" << format_matrix(alg.generators);
        emit(o, out, t.str());
    } else {
        emit(o, out, dump(j));
    }
    return kExitOk;
}

int cmd_verify(const CommonOptions& o, const std::string& reduced_path, std::ostream& out) {
    require_input(o);
    if (reduced_path.empty()) {
        throw ParseError("verify needs the reduced system (--reduced or second positional argument)");
    }
    const Tolerances tol = o.tolerances();
    const PositiveLtiSystem original = system_from_json(read_json_file(o.input), tol);
    json red_doc = read_json_file(reduced_path);
    if (red_doc.is_object() && red_doc.contains("reduced_system")) {
        if (red_doc.at("reduced_system").is_null()) {
            throw ParseError("report carries no reduced system");
        }
        red_doc = red_doc.at("reduced_system");
    }
    const StateSpace reduced = state_space_from_json(red_doc);
    const EquivalenceCheck check = compare_markov(original, reduced, tol, o.horizon);
    const bool positive = is_positive(reduced, tol);
    json j{{"equivalent", check.equivalent},
           {"positive", positive},
           {"horizon", check.horizon},
           {"max_abs_error", check.max_abs_error}};
    if (o.text()) {
        std::ostringstream t;
        t << "markov equivalence (horizon " << check.horizon << "): " << (check.equivalent ? "yes" : "no")
          << ", max error " << check.max_abs_error << "\npositivity: " << (positive ? "yes" : "no") << "\n";
        emit(o, out, t.str());
    } else {
        emit(o, out, dump(j));
    }
    return check.equivalent && positive ? kExitOk : kExitNegative;
}

struct GenOptions {
    Index n = 4;
    Index inputs = 1;
    Index outputs = 1;
    std::optional<Index> reachable_dim;
    double density = 1.0;
};

int cmd_gen(const CommonOptions& o, const GenOptions& g, std::ostream& out) {
    GeneratorSpec spec;
    spec.n = g.n;
    spec.inputs = g.inputs;
    spec.outputs = g.outputs;
    spec.reachable_dim = g.reachable_dim;
    spec.density = g.density;
    spec.seed = o.seed.value_or(0);
    const PositiveLtiSystem s = generate_system(spec);
    emit(o, out, dump(state_space_to_json(s)));
    return kExitOk;
}

struct PerturbOptions {
    std::size_t count = 10;
    double delta = 0.1;
    std::vector<std::string> extra;
};

PositiveLtiSystem perturb_system(const PositiveLtiSystem& s, double delta, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto noise = [&](Matrix m) {
        for (Index i = 0; i < m.rows(); ++i) {
            for (Index j = 0; j < m.cols(); ++j) {
                if (m(i, j) != 0.0) {
                    m(i, j) *= 1.0 + delta * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
                }
            }
        }
        return m;
    };
    Matrix a = noise(s.A());
    Matrix b = noise(s.B());
    Matrix c = noise(s.C());
    return PositiveLtiSystem(std::move(a), std::move(b), std::move(c), s.time_domain());
}

int cmd_perturb(const CommonOptions& o, const PerturbOptions& p, std::ostream& out) {
    require_input(o);
    if (!(p.delta >= 0.0)) {
        throw ParseError("--delta must be non-negative");
    }
    const ReductionOptions ropts = reduction_options(o);
    const Tolerances& tol = ropts.tol;
    const PositiveLtiSystem s = system_from_json(read_json_file(o.input), tol);

    const SubspaceBasis reach = reachable_subspace(s, tol);
    const Factorization naive{reach.matrix(), left_inverse(reach.matrix(), tol), {}};
    const ReductionReport robust_report = rpmr_reachable(s, ropts);
    if (!robust_report.factorization) {
        throw Error(ErrorKind::InvalidArgument, "system admits no robust reduction: " +
                                                    (robust_report.diagnostics.empty() ? std::string("none")
                                                                                       : robust_report.diagnostics.back()));
    }
    const Factorization& robust = *robust_report.factorization;

    std::vector<PositiveLtiSystem> perturbed;
    std::vector<std::string> sources;
    for (const std::string& path : p.extra) {
        perturbed.push_back(system_from_json(read_json_file(path), tol));
        sources.push_back(path);
    }
    const std::uint64_t base = o.seed.value_or(0);
    const std::size_t first_random = perturbed.size();
    perturbed.resize(first_random + p.count, s);
    sources.resize(first_random + p.count, "random");

    // Per-item seeds make the result independent of the worker count.
    const auto jobs = static_cast<std::size_t>(std::max(1, o.jobs));
    auto work = [&](std::size_t worker) {
        for (std::size_t i = worker; i < p.count; i += jobs) {
            perturbed[first_random + i] = perturb_system(s, p.delta, splitmix64(base + i));
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < std::min(jobs, p.count); ++w) {
        pool.emplace_back(work, w);
    }
    work(0);
    for (std::thread& t : pool) {
        t.join();
    }

    const std::vector<PerturbationOutcome> rows = perturbation_experiment(s, naive, robust, perturbed, tol);
    std::size_t naive_ok = 0;
    std::size_t robust_ok = 0;
    std::size_t equiv_ok = 0;
    json table = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        naive_ok += rows[i].naive_positive;
        robust_ok += rows[i].robust_positive;
        equiv_ok += rows[i].equivalent;
        table.push_back(json{{"index", i},
                             {"source", sources[i]},
                             {"naive_positive", rows[i].naive_positive},
                             {"robust_positive", rows[i].robust_positive},
                             {"equivalent", rows[i].equivalent}});
    }
    const double total = rows.empty() ? 1.0 : static_cast<double>(rows.size());
    json j{{"schema_version", kReportSchemaVersion},
           {"delta", p.delta},
           {"count", rows.size()},
           {"robust_method", std::string(to_string(robust_report.method))},
           {"rows", table},
           {"naive_positive_rate", static_cast<double>(naive_ok) / total},
           {"robust_positive_rate", static_cast<double>(robust_ok) / total},
           {"equivalent_rate", static_cast<double>(equiv_ok) / total}};
    if (o.text()) {
        std::ostringstream t;
        t << "   #  source            naive  robust  equivalent\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            t << std::setw(4) << i << "  " << std::left << std::setw(16) << sources[i].substr(0, 16) << std::right
              << std::setw(7) << (rows[i].naive_positive ? "yes" : "no") << std::setw(8)
              << (rows[i].robust_positive ? "yes" : "no") << std::setw(12) << (rows[i].equivalent ? "yes" : "no")
              << "\n";
        }
        t << "positive rate: naive " << naive_ok << "/" << rows.size() << ", robust " << robust_ok << "/"
          << rows.size() << "\n";
        emit(o, out, t.str());
    } else {
        emit(o, out, dump(j));
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Robust positive model reduction of positive linear systems", "posred"};
    app.require_subcommand(1);

    CommonOptions common;
    GenOptions gen;
    PerturbOptions perturb;
    std::string reduced_path;
    std::string original_positional;

    auto* reduce = app.add_subcommand("reduce", "Reduce a positive system onto its reachable or observable space");
    auto* monotone = app.add_subcommand("monotone", "Test a matrix for monotonicity");
    auto* factorize = app.add_subcommand("factorize", "Search a non-negative projector factorization");
    auto* algebra = app.add_subcommand("algebra", "Close a subspace to its smallest distorted algebra");
    auto* verify = app.add_subcommand("verify", "Check Markov equivalence and positivity of a reduction");
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random positive system");
    auto* perturb_cmd = app.add_subcommand("perturb", "Compare naive and robust reductions under perturbation");
    for (CLI::App* c : {reduce, monotone, factorize, algebra, verify, gen_cmd, perturb_cmd}) {
        add_common(c, common);
    }
    verify->add_option("original", original_positional, "Original system (alternative to --input)");
    verify->add_option("--reduced,reduced", reduced_path, "Reduced system or reduction report");
    gen_cmd->add_option("--n", gen.n, "State dimension")->required();
    gen_cmd->add_option("--inputs", gen.inputs, "Number of inputs");
    gen_cmd->add_option("--outputs", gen.outputs, "Number of outputs");
    gen_cmd->add_option("--reachable-dim", gen.reachable_dim, "Plant an invariant subspace of this dimension");
    gen_cmd->add_option("--density", gen.density, "Probability of a nonzero entry");
    perturb_cmd->add_option("--count", perturb.count, "Number of random perturbations");
    perturb_cmd->add_option("--delta", perturb.delta, "Multiplicative noise amplitude");
    perturb_cmd->add_option("--with", perturb.extra, "Explicit perturbed system file (repeatable)");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "posred: " << e.what() << "\n";
        return kExitInvalid;
    }
    if (common.input.empty() && !original_positional.empty()) {
        common.input = original_positional;
    }

    try {
        if (reduce->parsed()) return cmd_reduce(common, out);
        if (monotone->parsed()) return cmd_monotone(common, out);
        if (factorize->parsed()) return cmd_factorize(common, out);
        if (algebra->parsed()) return cmd_algebra(common, out);
        if (verify->parsed()) return cmd_verify(common, reduced_path, out);
        if (gen_cmd->parsed()) return cmd_gen(common, gen, out);
        if (perturb_cmd->parsed()) return cmd_perturb(common, perturb, out);
    } catch (const ParseError& e) {
        err << "posred: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Error& e) {
        err << "posred: " << e.what() << "\n";
        if (e.kind() == ErrorKind::TooLarge) {
            return kExitTooLarge;
        }
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "posred: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace posred::cli
