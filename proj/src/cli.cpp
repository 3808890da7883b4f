#include "rehaze/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "rehaze/config.hpp"
#include "rehaze/pipeline.hpp"

namespace rehaze::cli {
namespace {

namespace fs = std::filesystem;
using pipeline::kSuccess;
using pipeline::kUsageOrIoError;
using pipeline::kVerificationFailure;

struct ProfileFlags {
    std::string kind = "indoor";
    std::optional<double> a_min, a_max, beta_min, beta_max, delta_beta_min, delta_beta_max;

    void attach(CLI::App& app) {
        app.add_option("--profile", kind, "Scene profile: indoor|outdoor")->check(CLI::IsMember({"indoor", "outdoor"}));
        app.add_option("--a-min", a_min, "Airlight range lower bound");
        app.add_option("--a-max", a_max, "Airlight range upper bound");
        app.add_option("--beta-min", beta_min, "Scattering coefficient lower bound");
        app.add_option("--beta-max", beta_max, "Scattering coefficient upper bound");
        app.add_option("--delta-beta-min", delta_beta_min, "Rehazy increment lower bound");
        app.add_option("--delta-beta-max", delta_beta_max, "Rehazy increment upper bound");
    }

    SceneProfile resolve() const {
        SceneProfile p = SceneProfile::defaults(parse_scene_kind(kind));
        p.a_range.min = a_min.value_or(p.a_range.min);
        p.a_range.max = a_max.value_or(p.a_range.max);
        p.beta_range.min = beta_min.value_or(p.beta_range.min);
        p.beta_range.max = beta_max.value_or(p.beta_range.max);
        p.delta_beta_range.min = delta_beta_min.value_or(p.delta_beta_range.min);
        p.delta_beta_range.max = delta_beta_max.value_or(p.delta_beta_range.max);
        validate(p);
        return p;
    }
};

Airlight parse_airlight(const std::string& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(part, &used));
            if (used != part.size()) {
                throw std::invalid_argument(part);
            }
        } catch (const std::logic_error&) {
            throw InvalidParameter("--airlight expects r,g,b or a single value, got '" + text + "'");
        }
    }
    if (values.size() == 1) {
        return Airlight::gray(values[0]);
    }
    if (values.size() != 3) {
        throw InvalidParameter("--airlight expects r,g,b or a single value, got '" + text + "'");
    }
    Airlight a{{values[0], values[1], values[2]}};
    require_valid(a);
    return a;
}

void print_warnings(const pipeline::RunLog& log, std::ostream& err) {
    for (const auto& w : log.warnings) {
        err << "warning: " << w << '\n';
    }
}

void write_json(const nlohmann::json& j, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << j.dump(2) << '\n';
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw IoError("cannot write '" + path + "'");
    }
    file << j.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    try {
        args = config::inline_config(raw_args);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrIoError;
    }

    CLI::App app{"Haze synthesis, rehazy pair generation and verification toolkit", "rehaze"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolkitVersion));
    std::string config_placeholder;
    app.add_option("--config", config_placeholder, "key=value file supplying defaults for the subcommand's flags");

    // synth
    pipeline::SynthOptions synth;
    ProfileFlags synth_profile;
    std::string synth_clean, synth_depth, synth_out;
    auto* synth_cmd = app.add_subcommand("synth", "Synthesize hazy images from clean images and depth maps");
    synth_cmd->add_option("--clean-dir", synth_clean, "Directory of clean PNG images")->required();
    synth_cmd->add_option("--depth-dir", synth_depth, "Directory of depth PNGs with matching filenames")->required();
    synth_cmd->add_option("--out-dir", synth_out, "Output directory")->required();
    synth_cmd->add_option("--seed", synth.seed, "Run seed");
    synth_cmd->add_option("--count", synth.count_per_image, "Hazy images per clean image")->check(CLI::PositiveNumber);
    synth_cmd->add_option("--workers", synth.workers, "Worker threads")->check(CLI::PositiveNumber);
    synth_cmd->add_flag("--emit-pyramid", synth.emit_pyramid, "Also write half/quarter resolution clean targets");
    synth_profile.attach(*synth_cmd);

    // rehazy
    pipeline::RehazyOptions rehazy;
    ProfileFlags rehazy_profile;
    std::string rehazy_hazy, rehazy_depth, rehazy_out, rehazy_airlight;
    std::optional<double> fixed_delta_beta;
    auto* rehazy_cmd = app.add_subcommand("rehazy", "Generate rehazy images from hazy images and depth maps");
    rehazy_cmd->add_option("--hazy-dir", rehazy_hazy, "Directory of hazy PNG images")->required();
    rehazy_cmd->add_option("--depth-dir", rehazy_depth, "Directory of depth PNGs with matching filenames")->required();
    rehazy_cmd->add_option("--out-dir", rehazy_out, "Output directory")->required();
    rehazy_cmd->add_option("--seed", rehazy.seed, "Run seed");
    rehazy_cmd->add_option("--n-rehazy", rehazy.n_rehazy, "Rehazy images per hazy image")->check(CLI::PositiveNumber);
    rehazy_cmd->add_option("--workers", rehazy.workers, "Worker threads")->check(CLI::PositiveNumber);
    rehazy_cmd->add_option("--airlight", rehazy_airlight, "Fixed airlight r,g,b (skips DCP estimation)");
    rehazy_cmd->add_option("--delta-beta", fixed_delta_beta, "Fixed increment instead of sampling (0 allowed)");
    rehazy_cmd->add_option("--patch", rehazy.dcp.patch, "DCP window for airlight estimation");
    rehazy_cmd->add_option("--top-fraction", rehazy.dcp.top_fraction, "Fraction of brightest dark-channel pixels");
    rehazy_profile.attach(*rehazy_cmd);

    // verify
    pipeline::VerifyOptions verify;
    ProfileFlags verify_profile;
    std::string verify_report, verify_work;
    auto* verify_cmd = app.add_subcommand("verify", "Check the rehazy identities on synthetic scenes");
    verify_cmd->add_option("--mode", verify.mode, "composition|semigroup|roundtrip|consistency|all")
        ->check(CLI::IsMember({"composition", "semigroup", "roundtrip", "consistency", "all"}));
    verify_cmd->add_option("--seed", verify.seed, "Run seed");
    verify_cmd->add_option("--scenes", verify.scenes, "Synthetic scenes per check")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--trials", verify.trials, "Semigroup trials")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--size", verify.size, "Scene side length in pixels")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--beta0", verify.beta0, "Fixed scattering coefficient of the hazy input");
    verify_cmd->add_option("--delta-beta", verify.delta_beta, "Fixed rehazy increment");
    verify_cmd->add_option("--work-dir", verify_work, "Scratch directory for the 8-bit round trip");
    verify_cmd->add_option("--report", verify_report, "Write the JSON report here instead of stdout");
    verify_profile.attach(*verify_cmd);

    // metrics
    std::string metrics_a, metrics_b, metrics_json;
    int metrics_workers = 1;
    auto* metrics_cmd = app.add_subcommand("metrics", "PSNR/SSIM/CIEDE2000/L1 between same-named images");
    metrics_cmd->add_option("--dir-a", metrics_a, "First directory")->required();
    metrics_cmd->add_option("--dir-b", metrics_b, "Second directory")->required();
    metrics_cmd->add_option("--json", metrics_json, "Write the JSON report here (- for stdout)");
    metrics_cmd->add_option("--workers", metrics_workers, "Worker threads")->check(CLI::PositiveNumber);

    // dcp-dehaze
    pipeline::DcpOptions dehaze;
    std::string dehaze_hazy, dehaze_out, dehaze_clean, dehaze_report;
    auto* dcp_cmd = app.add_subcommand("dcp-dehaze", "Dark channel prior dehazing baseline");
    dcp_cmd->add_option("--hazy-dir", dehaze_hazy, "Directory of hazy PNG images")->required();
    dcp_cmd->add_option("--out-dir", dehaze_out, "Output directory")->required();
    dcp_cmd->add_option("--clean-dir", dehaze_clean, "Ground truth for before/after PSNR");
    dcp_cmd->add_option("--patch", dehaze.dcp.patch, "Dark channel window (odd)");
    dcp_cmd->add_option("--omega", dehaze.dcp.omega, "Haze retention factor in [0,1]");
    dcp_cmd->add_option("--top-fraction", dehaze.dcp.top_fraction, "Fraction of brightest dark-channel pixels");
    dcp_cmd->add_option("--workers", dehaze.workers, "Worker threads")->check(CLI::PositiveNumber);
    dcp_cmd->add_option("--report", dehaze_report, "Write the JSON report here instead of stdout");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageOrIoError;
    }

    try {
        if (*synth_cmd) {
            synth.clean_dir = synth_clean;
            synth.depth_dir = synth_depth;
            synth.out_dir = synth_out;
            synth.profile = synth_profile.resolve();
            const auto result = pipeline::run_synth(synth);
            print_warnings(result.log, err);
            out << "wrote " << result.manifest.entries.size() << " hazy images; manifest "
                << (synth.out_dir / "manifest.json").string() << '\n';
            return pipeline::exit_code(result.log);
        }
        if (*rehazy_cmd) {
            rehazy.hazy_dir = rehazy_hazy;
            rehazy.depth_dir = rehazy_depth;
            rehazy.out_dir = rehazy_out;
            rehazy.profile = rehazy_profile.resolve();
            rehazy.fixed_delta_beta = fixed_delta_beta;
            if (!rehazy_airlight.empty()) {
                rehazy.airlight = parse_airlight(rehazy_airlight);
            }
            const auto result = pipeline::run_rehazy(rehazy);
            print_warnings(result.log, err);
            std::size_t files = 0;
            for (const auto& e : result.manifest.entries) {
                files += e.rehazy_paths.size();
            }
            out << "wrote " << files << " rehazy images; manifest " << (rehazy.out_dir / "manifest.json").string()
                << '\n';
            return pipeline::exit_code(result.log);
        }
        if (*verify_cmd) {
            verify.profile = verify_profile.resolve();
            verify.work_dir = verify_work;
            const auto report = pipeline::run_verify(verify);
            write_json(pipeline::to_json(report), verify_report, out);
            for (const auto& c : report.checks) {
                if (!c.passed) {
                    err << "FAILED " << c.name << ": max " << c.measure << " " << c.max_error << " > tolerance "
                        << c.tolerance << '\n';
                }
            }
            return report.passed() ? kSuccess : kVerificationFailure;
        }
        if (*metrics_cmd) {
            const auto report = pipeline::run_metrics(metrics_a, metrics_b, metrics_workers);
            out << pipeline::format_table(report);
            if (!metrics_json.empty()) {
                write_json(pipeline::to_json(report), metrics_json, out);
            }
            for (const auto& name : report.unmatched) {
                err << "unmatched: " << name << '\n';
            }
            return report.unmatched.empty() ? kSuccess : kUsageOrIoError;
        }
        if (*dcp_cmd) {
            dehaze.hazy_dir = dehaze_hazy;
            dehaze.out_dir = dehaze_out;
            if (!dehaze_clean.empty()) {
                dehaze.clean_dir = fs::path(dehaze_clean);
            }
            const auto report = pipeline::run_dcp_dehaze(dehaze);
            print_warnings(report.log, err);
            write_json(pipeline::to_json(report), dehaze_report, out);
            return pipeline::exit_code(report.log);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrIoError;
    }
    return kUsageOrIoError;
}

}  // namespace rehaze::cli
