#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spincover/json_io.hpp"
#include "spincover/rep_matrix.hpp"
#include "spincover/spin.hpp"

#include "golden.hpp"

using namespace spincover;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_property_failure = 1;
constexpr int exit_bad_input = 2;
constexpr int exit_internal = 3;

struct CommonOpts {
    std::optional<std::string> input;
    std::optional<std::string> output;
    std::optional<int> p;
    std::optional<int> q;
    double tolerance = 1e-8;
    std::uint64_t seed = 0;
    int count = 100;
};

json read_input_json(const CommonOpts& opts) {
    std::string text;
    if (opts.input) {
        std::ifstream in(*opts.input);
        if (!in) throw InputError("cannot open input file: " + *opts.input);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("input is not valid JSON");
    return j;
}

void emit(const CommonOpts& opts, const json& j) {
    const std::string text = j.dump(2) + "\n";
    if (opts.output) {
        std::ofstream out(*opts.output, std::ios::binary);
        if (!out) throw InputError("cannot open output file: " + *opts.output);
        out << text;
    } else {
        std::cout << text;
    }
}

void check_signature_flags(const CommonOpts& opts, const Signature& sig) {
    if (opts.p && *opts.p != sig.p())
        throw InputError("--p does not match the signature in the input document");
    if (opts.q && *opts.q != sig.q())
        throw InputError("--q does not match the signature in the input document");
}

std::string groups_line(const Membership& m) {
    std::string line;
    for (SpinGroup g : m.groups) {
        if (!line.empty()) line += ", ";
        line += to_string(g);
    }
    return line;
}

int cmd_lift(const CommonOpts& opts) {
    const OrthogonalMatrix m = orthogonal_from_json(read_input_json(opts), opts.tolerance);
    check_signature_flags(opts, m.sig());
    LiftResult res = [&] {
        try {
            return lift(m);
        } catch (const Error& e) {
            std::cerr << "lift failed internally: " << e.what() << "\n";
            std::exit(exit_internal);
        }
    }();
    emit(opts, lift_result_to_json(res));
    std::cerr << "signature  " << to_string(m.sig()) << "\n"
              << "component  " << to_string(res.component) << " -> "
              << to_string(res.groups.component) << "\n"
              << "T_plus     " << to_string(res.T_plus) << "\n"
              << "norm       rev(T) T = " << to_string(res.norm_type) << "\n"
              << "groups     " << groups_line(res.groups) << "\n"
              << "residual   " << res.residual << "\n";
    return exit_ok;
}

int cmd_project(const CommonOpts& opts) {
    const Multivector t = multivector_from_json(read_input_json(opts));
    check_signature_flags(opts, t.sig());
    const OrthogonalMatrix m = project(t);
    emit(opts, orthogonal_to_json(m));
    std::cerr << "signature  " << to_string(t.sig()) << "\n"
              << "component  " << to_string(classify_orthogonal(m)) << "\n";
    return exit_ok;
}

int cmd_classify(const CommonOpts& opts) {
    const OrthogonalMatrix m = orthogonal_from_json(read_input_json(opts), opts.tolerance);
    check_signature_flags(opts, m.sig());
    const ComponentTag tag = classify_orthogonal(m);
    const double det = m.entries().determinant();
    emit(opts, json{{"component", to_string(tag)},
                    {"covering_component", to_string(paired_component(tag))},
                    {"determinant", det},
                    {"orthogonality_residual", m.orthogonality_residual()}});
    std::cerr << "component  " << to_string(tag) << " (det " << det << ")\n";
    return exit_ok;
}

int cmd_verify(const CommonOpts& opts) {
    const json j = read_input_json(opts);
    if (!j.is_object() || !j.contains("matrix") || !j.contains("versor"))
        throw InputError("verify expects {\"matrix\": ..., \"versor\": ...}");
    const OrthogonalMatrix m = orthogonal_from_json(j["matrix"], opts.tolerance);
    const Multivector t = multivector_from_json(j["versor"]);
    check_signature_flags(opts, m.sig());
    if (t.sig().p() != m.sig().p() || t.sig().q() != m.sig().q())
        throw InputError("matrix and versor signatures differ");

    const OrthogonalMatrix back = project(t);
    const double residual = (back.entries() - m.entries()).cwiseAbs().maxCoeff();
    const double gate = opts.tolerance * std::max(1.0, m.entries().cwiseAbs().maxCoeff());
    const bool ok = residual <= gate;
    json report{{"ok", ok}, {"residual", residual}};
    try {
        const Membership groups = membership(t);
        report["groups"] = json::array();
        for (SpinGroup g : groups.groups) report["groups"].push_back(to_string(g));
        report["component"] = to_string(groups.component);
    } catch (const NotInPinError& e) {
        report["groups_error"] = e.what();
    }
    emit(opts, report);
    std::cerr << (ok ? "verify: versor covers the matrix (residual "
                     : "verify: MISMATCH (residual ")
              << residual << ")\n";
    return ok ? exit_ok : exit_property_failure;
}

int cmd_fuzz(const CommonOpts& opts) {
    if (!opts.p || !opts.q) throw InputError("fuzz requires --p and --q");
    const Signature sig(*opts.p, *opts.q);
    if (opts.count < 1) throw InputError("--count must be positive");

    std::map<std::string, int> components;
    double max_residual = 0.0;
    int ok = 0;
    std::mt19937_64 master(opts.seed);
    for (int trial = 0; trial < opts.count; ++trial) {
        const int k = static_cast<int>(master() % (sig.n() + 3));
        const std::uint64_t vseed = master();
        try {
            const Multivector v = random_versor(sig, k, vseed);
            const auto [vn, vtype] = normalize(v);
            const OrthogonalMatrix m = project(v);
            const LiftResult res = lift(m);
            components[to_string(res.component)]++;
            const double diff = max_abs_diff(res.T_plus, vn) / std::max(1.0, vn.norm_inf());
            max_residual = std::max(max_residual, diff);
            if (diff > opts.tolerance || res.norm_type != vtype) {
                std::cout << "trial " << trial << " failed: versor seed " << vseed << " k=" << k
                          << " diff=" << diff << "\n";
                return exit_property_failure;
            }
            ++ok;
        } catch (const Error& e) {
            std::cout << "trial " << trial << " failed: versor seed " << vseed << " k=" << k
                      << ": " << e.what() << "\n";
            return exit_property_failure;
        }
    }
    std::cout << "fuzz " << to_string(sig) << ": " << ok << "/" << opts.count
              << " ok, max residual " << max_residual << "\n";
    std::cout << "components:";
    for (const auto& [name, n] : components) std::cout << " " << name << "=" << n;
    std::cout << "\n";
    return exit_ok;
}

// ---- selftest ------------------------------------------------------------

std::string run_item(const json& item) {  // empty string means pass
    const std::string kind = item.at("kind").get<std::string>();

    if (kind == "anticommutation") {
        const Signature sig(item.at("p").get<int>(), item.at("q").get<int>());
        for (int a = 1; a <= sig.n(); ++a)
            for (int b = 1; b <= sig.n(); ++b) {
                const Multivector ea = Multivector::basis_vector(sig, a);
                const Multivector eb = Multivector::basis_vector(sig, b);
                const double target = a == b ? 2.0 * sig.metric(a) : 0.0;
                if (!(add(mul(ea, eb), mul(eb, ea)) == Multivector::scalar(sig, target)))
                    return "generator relations are not exact";
            }
        return {};
    }
    if (kind == "trace_cyclic") {
        const Signature sig(item.at("p").get<int>(), item.at("q").get<int>());
        std::mt19937_64 rng(item.at("seed").get<std::uint64_t>());
        const double tol = item.at("tolerance").get<double>();
        auto uniform = [&rng] { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
        auto sample = [&] {
            std::vector<Multivector::Term> terms;
            for (BladeMask m = 0; m <= sig.full_mask(); ++m)
                if ((rng() & 1) == 0) terms.push_back({m, Coeff{uniform()}});
            return Multivector::from_terms(sig, std::move(terms));
        };
        for (int t = 0; t < item.at("trials").get<int>(); ++t) {
            const Multivector u = sample(), v = sample();
            if (std::abs(trace(mul(u, v)) - trace(mul(v, u))) > tol)
                return "trace cyclicity violated";
        }
        return {};
    }
    if (kind == "reversion_sign") {
        const Signature sig(item.at("p").get<int>(), item.at("q").get<int>());
        BladeMask mask = 0;
        for (int a : item.at("index")) mask |= BladeMask{1} << (a - 1);
        const double s = item.at("expected_sign").get<double>();
        if (!(reversion(Multivector::blade(sig, mask)) == Multivector::blade(sig, mask, s)))
            return "reversion sign mismatch";
        return {};
    }
    if (kind == "classify") {
        const OrthogonalMatrix m = orthogonal_from_json(item.at("matrix"));
        if (to_string(classify_orthogonal(m)) != item.at("expected").get<std::string>())
            return "component tag mismatch";
        return {};
    }
    if (kind == "project") {
        const Multivector t = multivector_from_json(item.at("multivector"));
        const OrthogonalMatrix want = orthogonal_from_json(item.at("expected_matrix"));
        const OrthogonalMatrix got = project(t);
        if ((got.entries() - want.entries()).cwiseAbs().maxCoeff() > 1e-10)
            return "projected matrix mismatch";
        return {};
    }
    if (kind == "membership") {
        const Multivector t = multivector_from_json(item.at("multivector"));
        const Membership m = membership(t);
        std::set<std::string> got;
        for (SpinGroup g : m.groups) got.insert(to_string(g));
        std::set<std::string> want;
        for (const auto& g : item.at("expected_groups")) want.insert(g.get<std::string>());
        if (got != want) return "group set mismatch";
        if (to_string(m.component) != item.at("expected_component").get<std::string>())
            return "spin component mismatch";
        return {};
    }
    if (kind == "lift") {
        const OrthogonalMatrix m = orthogonal_from_json(item.at("matrix"));
        const Multivector want = multivector_from_json(item.at("expected_T"));
        const LiftResult res = lift(m);
        if (max_abs_diff(res.T_plus, want) > 1e-10) return "lifted element mismatch";
        if (to_string(res.groups.component) != item.at("expected_component").get<std::string>())
            return "spin component mismatch";
        if (to_string(res.norm_type) != item.at("expected_norm").get<std::string>())
            return "norm type mismatch";
        return {};
    }
    if (kind == "gamma_sigma") {
        const GammaRep rep = gamma_complex(Signature(3, 0, Field::complex));
        DenseMatrix s1(2, 2), s2(2, 2), s3(2, 2);
        using namespace std::complex_literals;
        s1 << 0, 1, 1, 0;
        s2 << 0, -1i, 1i, 0;
        s3 << 1, 0, 0, -1;
        if ((rep.matrices()[0] - s1).cwiseAbs().maxCoeff() > 1e-14 ||
            (rep.matrices()[1] - s2).cwiseAbs().maxCoeff() > 1e-14 ||
            (rep.matrices()[2] - s3).cwiseAbs().maxCoeff() > 1e-14)
            return "sigma representation mismatch";
        return {};
    }
    if (kind == "sigma_sign") {
        const GammaRep rep = gamma_complex(Signature(3, 0, Field::complex));
        std::vector<DenseMatrix> neg;
        for (const DenseMatrix& m : rep.matrices()) neg.push_back(-m);
        const GammaRep negrep(rep.sig(), neg);
        const auto [t, sign] = matrix_intertwiner_odd_sign(rep, negrep);
        if (sign != -1) return "expected sign -1";
        const DenseMatrix unit = t / t(0, 0);
        if ((unit - DenseMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-10)
            return "T is not proportional to the identity";
        if (intertwining_nullspace_dimension(rep.matrices(), negrep.matrices()) != 0)
            return "plain similarity system should have no solutions";
        return {};
    }
    return "unknown item kind: " + kind;
}

int cmd_selftest(const CommonOpts& opts, bool dump) {
    json items;
    if (opts.input) {
        items = read_input_json(opts);
        if (!items.is_array()) throw InputError("golden file must hold a JSON array");
    } else {
        items = golden::default_items();
    }
    if (dump) {
        emit(opts, items);
        return exit_ok;
    }

    int passed = 0;
    std::string first_failure;
    for (const json& item : items) {
        std::string name = "(unnamed)";
        std::string detail;
        try {
            name = item.at("name").get<std::string>();
            detail = run_item(item);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        if (detail.empty()) {
            std::cout << "PASS " << name << "\n";
            ++passed;
        } else {
            std::cout << "FAIL " << name << ": " << detail << "\n";
            if (first_failure.empty()) first_failure = name;
        }
    }
    std::cout << "selftest: " << passed << "/" << items.size() << " passed\n";
    return first_failure.empty() ? exit_ok : exit_property_failure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-group covers of pseudo-orthogonal matrices in Cl(p,q)"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool dump_golden = false;

    auto add_common = [&](CLI::App* sub, bool with_sig, bool with_fuzz) {
        sub->add_option("--input", opts.input, "input JSON file (stdin when omitted)");
        sub->add_option("--output", opts.output, "output JSON file (stdout when omitted)");
        sub->add_option("--tolerance", opts.tolerance, "residual tolerance")->default_val(1e-8);
        if (with_sig) {
            sub->add_option("--p", opts.p, "expected count of +1 metric entries");
            sub->add_option("--q", opts.q, "expected count of -1 metric entries");
        }
        if (with_fuzz) {
            sub->add_option("--seed", opts.seed, "base RNG seed")->default_val(0);
            sub->add_option("--count", opts.count, "number of trials")->default_val(100);
        }
    };

    CLI::App* lift_cmd = app.add_subcommand("lift", "matrix -> pair of covering elements");
    add_common(lift_cmd, true, false);
    CLI::App* project_cmd = app.add_subcommand("project", "element -> orthogonal matrix");
    add_common(project_cmd, true, false);
    CLI::App* classify_cmd = app.add_subcommand("classify", "component of an orthogonal matrix");
    add_common(classify_cmd, true, false);
    CLI::App* verify_cmd = app.add_subcommand("verify", "check that a versor covers a matrix");
    add_common(verify_cmd, true, false);
    CLI::App* fuzz_cmd = app.add_subcommand("fuzz", "randomized project/lift round trips");
    add_common(fuzz_cmd, true, true);
    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the packaged golden vectors");
    add_common(selftest_cmd, false, false);
    selftest_cmd->add_flag("--dump-golden", dump_golden,
                           "print the golden vectors instead of running them");

    CLI11_PARSE(app, argc, argv);

    try {
        if (lift_cmd->parsed()) return cmd_lift(opts);
        if (project_cmd->parsed()) return cmd_project(opts);
        if (classify_cmd->parsed()) return cmd_classify(opts);
        if (verify_cmd->parsed()) return cmd_verify(opts);
        if (fuzz_cmd->parsed()) return cmd_fuzz(opts);
        if (selftest_cmd->parsed()) return cmd_selftest(opts, dump_golden);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const NotLipschitzError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const NonInvertibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const NotInPinError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_bad_input;
}
