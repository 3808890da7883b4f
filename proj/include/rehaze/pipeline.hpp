#ifndef REHAZE_PIPELINE_HPP
#define REHAZE_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rehaze/dcp.hpp"
#include "rehaze/manifest.hpp"
#include "rehaze/metrics.hpp"
#include "rehaze/scattering.hpp"

// Batch front end behind the `rehaze` command line tool. Every command is a
// library call so it can be tested without spawning processes.

namespace rehaze::pipeline {

namespace fs = std::filesystem;

/// Exit codes shared by all commands.
enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageOrIoError = 2 };

/// Sorted .png files (case-insensitive extension) directly inside dir.
std::vector<fs::path> list_pngs(const fs::path& dir);

/// Runs fn(i) for i in [0, count) on up to `workers` threads. The first
/// exception thrown by any item is rethrown after all threads join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

struct RunLog {
    std::vector<std::string> warnings;
    std::size_t inputs = 0;
    std::size_t skipped = 0;
};

struct SynthOptions {
    fs::path clean_dir;
    fs::path depth_dir;
    fs::path out_dir;
    SceneProfile profile = SceneProfile::indoor();
    std::uint64_t seed = 0;
    int count_per_image = 1;
    int workers = 1;
    /// Also write half and quarter resolution clean targets.
    bool emit_pyramid = false;
};

struct SynthResult {
    Manifest manifest;
    RunLog log;
};

/// Clean-branch data: hazy images from clean images and their depths.
/// Writes out_dir/hazy/<stem>_<k>.png, optional out_dir/targets/, and
/// out_dir/manifest.json.
SynthResult run_synth(const SynthOptions& options);

struct RehazyOptions {
    fs::path hazy_dir;
    fs::path depth_dir;
    fs::path out_dir;
    SceneProfile profile = SceneProfile::indoor();
    std::uint64_t seed = 0;
    int n_rehazy = 1;
    int workers = 1;
    /// Replaces the DCP airlight estimate.
    std::optional<Airlight> airlight;
    /// Replaces sampling; 0 is allowed and reproduces the input.
    std::optional<double> fixed_delta_beta;
    dcp::Options dcp;
};

struct RehazyResult {
    Manifest manifest;
    RunLog log;
};

/// Hazy-branch data: n_rehazy rehazy images per hazy input. Writes
/// out_dir/rehazy/<stem>_r<k>.png and out_dir/manifest.json.
RehazyResult run_rehazy(const RehazyOptions& options);

/// Exit code a synth/rehazy run maps to: I/O error when inputs existed but
/// none produced output.
int exit_code(const RunLog& log);

struct VerifyOptions {
    /// composition | semigroup | roundtrip | consistency | all
    std::string mode = "all";
    SceneProfile profile = SceneProfile::indoor();
    std::uint64_t seed = 0;
    int scenes = 100;
    int trials = 1000;
    int size = 64;
    /// Fixed scattering values for the composition check; sampled from the
    /// profile when absent.
    std::optional<double> beta0;
    std::optional<double> delta_beta;
    /// Scratch directory for the 8-bit file round trip.
    fs::path work_dir;
};

struct CheckResult {
    std::string name;
    std::string measure;
    double max_error = 0.0;
    double mean_error = 0.0;
    double tolerance = 0.0;
    int samples = 0;
    bool passed = false;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

VerifyReport run_verify(const VerifyOptions& options);

nlohmann::json to_json(const VerifyReport& report);

struct ImageScores {
    std::string name;
    metrics::Scores scores;
};

struct MetricsReport {
    std::vector<ImageScores> images;
    std::vector<std::string> unmatched;
    metrics::Scores mean;
};

/// Pairs files by name. PSNR is reported capped at 99 dB per image and the
/// mean is taken over capped values.
MetricsReport run_metrics(const fs::path& dir_a, const fs::path& dir_b, int workers = 1);

nlohmann::json to_json(const MetricsReport& report);
std::string format_table(const MetricsReport& report);

struct DcpOptions {
    fs::path hazy_dir;
    fs::path out_dir;
    /// Optional ground truth for before/after PSNR.
    std::optional<fs::path> clean_dir;
    dcp::Options dcp;
    int workers = 1;
};

struct DcpImageReport {
    std::string name;
    Airlight airlight;
    std::optional<double> psnr_hazy;
    std::optional<double> psnr_dehazed;
};

struct DcpReport {
    std::vector<DcpImageReport> images;
    RunLog log;
};

DcpReport run_dcp_dehaze(const DcpOptions& options);

nlohmann::json to_json(const DcpReport& report);

}  // namespace rehaze::pipeline

#endif  // REHAZE_PIPELINE_HPP
