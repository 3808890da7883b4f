#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "rehaze/depth_io.hpp"
#include "rehaze/pipeline.hpp"
#include "rehaze/png_io.hpp"
#include "rehaze/pyramid.hpp"
#include "rehaze/rehazy.hpp"

namespace rehaze::pipeline {
namespace {

std::string absolute_string(const fs::path& p) { return fs::absolute(p).lexically_normal().string(); }

std::string numbered(const std::string& stem, const char* tag, int k, int width) {
    std::ostringstream out;
    out << stem << "_" << tag << std::setw(width) << std::setfill('0') << k << ".png";
    return out.str();
}

void require_dir(const fs::path& dir, const char* what) {
    if (!fs::is_directory(dir)) {
        throw IoError(std::string(what) + " '" + dir.string() + "' is not a directory");
    }
}

// Per-input outcome, merged in input order after the parallel section.
struct ItemOutcome {
    std::vector<ManifestEntry> entries;
    std::optional<std::string> warning;
};

template <typename Result>
void merge(Result& result, std::vector<ItemOutcome>& outcomes) {
    for (auto& outcome : outcomes) {
        if (outcome.warning) {
            result.log.warnings.push_back(*outcome.warning);
            ++result.log.skipped;
        }
        for (auto& e : outcome.entries) {
            result.manifest.entries.push_back(std::move(e));
        }
    }
}

std::optional<DepthMap> load_paired_depth(const fs::path& depth_path, Size expected, std::string& warning) {
    if (!fs::exists(depth_path)) {
        warning = "skipping: no depth map '" + depth_path.string() + "'";
        return std::nullopt;
    }
    DepthMap d = depth::load_depth_auto(depth_path);
    if (d.size() != expected) {
        warning = "skipping: depth '" + depth_path.string() + "' is " + to_string(d.size()) + ", image is " +
                  to_string(expected);
        return std::nullopt;
    }
    return d;
}

}  // namespace

std::vector<fs::path> list_pngs(const fs::path& dir) {
    require_dir(dir, "input");
    std::vector<fs::path> files;
    for (const auto& item : fs::directory_iterator(dir)) {
        if (!item.is_regular_file()) {
            continue;
        }
        std::string ext = item.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == ".png") {
            files.push_back(item.path());
        }
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    return files;
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

int exit_code(const RunLog& log) {
    return log.inputs > 0 && log.skipped == log.inputs ? kUsageOrIoError : kSuccess;
}

SynthResult run_synth(const SynthOptions& options) {
    validate(options.profile);
    if (options.count_per_image < 1) {
        throw InvalidParameter("count per image must be >= 1");
    }
    require_dir(options.depth_dir, "depth directory");
    const auto inputs = list_pngs(options.clean_dir);

    SynthResult result;
    result.manifest.command = "synth";
    result.manifest.run_seed = options.seed;
    result.manifest.profile = options.profile;
    result.log.inputs = inputs.size();
    if (inputs.empty()) {
        result.log.warnings.push_back("no PNG images in '" + options.clean_dir.string() + "'");
    }

    fs::create_directories(options.out_dir / "hazy");
    if (options.emit_pyramid) {
        fs::create_directories(options.out_dir / "targets");
    }

    std::vector<ItemOutcome> outcomes(inputs.size());
    parallel_for(inputs.size(), options.workers, [&](std::size_t i) {
        const fs::path& clean_path = inputs[i];
        const std::string stem = clean_path.stem().string();
        ItemOutcome& outcome = outcomes[i];
        try {
            const Image clean = png::load_rgb(clean_path);
            const fs::path depth_path = options.depth_dir / clean_path.filename();
            std::string warning;
            const auto d = load_paired_depth(depth_path, clean.size(), warning);
            if (!d) {
                outcome.warning = warning;
                return;
            }

            std::optional<std::string> half;
            std::optional<std::string> quarter;
            if (options.emit_pyramid) {
                const auto scales = pyramid::build(clean);
                half = "targets/" + stem + "_ds2.png";
                quarter = "targets/" + stem + "_ds4.png";
                png::save_rgb8(options.out_dir / *half, scales.half);
                png::save_rgb8(options.out_dir / *quarter, scales.quarter);
            }

            for (int k = 0; k < options.count_per_image; ++k) {
                ManifestEntry entry;
                entry.seed = derive_seed(options.seed, "synth/" + stem, static_cast<std::uint64_t>(k));
                Rng rng(entry.seed);
                const HazeParams params = sample_haze_params(options.profile, rng);
                const Image hazy = synthesize_haze(clean, transmission(*d, params.beta), params.airlight);

                entry.hazy_path = "hazy/" + numbered(stem, "", k, 3);
                png::save_rgb8(options.out_dir / entry.hazy_path, hazy);
                entry.clean_path = absolute_string(clean_path);
                entry.depth_path = absolute_string(depth_path);
                entry.airlight = params.airlight;
                entry.beta = params.beta;
                entry.profile = options.profile.kind;
                entry.target_half = half;
                entry.target_quarter = quarter;
                outcome.entries.push_back(std::move(entry));
            }
        } catch (const IoError& e) {
            outcome.warning = "skipping '" + clean_path.string() + "': " + e.what();
        } catch (const DegenerateDepth& e) {
            outcome.warning = "skipping '" + clean_path.string() + "': " + e.what();
        }
    });

    merge(result, outcomes);
    write_manifest(options.out_dir / "manifest.json", result.manifest);
    return result;
}

RehazyResult run_rehazy(const RehazyOptions& options) {
    validate(options.profile);
    if (options.n_rehazy < 1) {
        throw InvalidParameter("n_rehazy must be >= 1");
    }
    if (options.fixed_delta_beta && !(std::isfinite(*options.fixed_delta_beta) && *options.fixed_delta_beta >= 0.0)) {
        throw InvalidParameter("fixed delta beta must be finite and >= 0");
    }
    if (options.airlight) {
        require_valid(*options.airlight);
    }
    require_dir(options.depth_dir, "depth directory");
    const auto inputs = list_pngs(options.hazy_dir);

    RehazyResult result;
    result.manifest.command = "rehazy";
    result.manifest.run_seed = options.seed;
    result.manifest.profile = options.profile;
    result.log.inputs = inputs.size();
    if (inputs.empty()) {
        result.log.warnings.push_back("no PNG images in '" + options.hazy_dir.string() + "'");
    }
    fs::create_directories(options.out_dir / "rehazy");

    std::vector<ItemOutcome> outcomes(inputs.size());
    parallel_for(inputs.size(), options.workers, [&](std::size_t i) {
        const fs::path& hazy_path = inputs[i];
        const std::string stem = hazy_path.stem().string();
        ItemOutcome& outcome = outcomes[i];
        try {
            const Image hazy = png::load_rgb(hazy_path);
            const fs::path depth_path = options.depth_dir / hazy_path.filename();
            std::string warning;
            const auto d = load_paired_depth(depth_path, hazy.size(), warning);
            if (!d) {
                outcome.warning = warning;
                return;
            }

            ManifestEntry entry;
            entry.airlight = options.airlight
                                 ? *options.airlight
                                 : dcp::estimate_airlight(hazy, options.dcp.patch, options.dcp.top_fraction);
            entry.seed = derive_seed(options.seed, "rehazy/" + stem, 0);
            Rng rng(entry.seed);
            for (int k = 0; k < options.n_rehazy; ++k) {
                const double delta_beta =
                    options.fixed_delta_beta ? *options.fixed_delta_beta : sample_delta_beta(options.profile, rng);
                const Image rehazy = generate_rehazy(hazy, *d, entry.airlight, delta_beta);
                const std::string rel = "rehazy/" + numbered(stem, "r", k, 2);
                png::save_rgb8(options.out_dir / rel, rehazy);
                entry.rehazy_paths.push_back(rel);
                entry.delta_betas.push_back(delta_beta);
            }
            entry.hazy_path = absolute_string(hazy_path);
            entry.depth_path = absolute_string(depth_path);
            entry.profile = options.profile.kind;
            outcome.entries.push_back(std::move(entry));
        } catch (const IoError& e) {
            outcome.warning = "skipping '" + hazy_path.string() + "': " + e.what();
        } catch (const DegenerateDepth& e) {
            outcome.warning = "skipping '" + hazy_path.string() + "': " + e.what();
        }
    });

    merge(result, outcomes);
    write_manifest(options.out_dir / "manifest.json", result.manifest);
    return result;
}

MetricsReport run_metrics(const fs::path& dir_a, const fs::path& dir_b, int workers) {
    const auto files_a = list_pngs(dir_a);
    const auto files_b = list_pngs(dir_b);
    if (files_a.empty() && files_b.empty()) {
        throw IoError("no PNG images in '" + dir_a.string() + "' or '" + dir_b.string() + "'");
    }

    std::vector<std::string> names_a;
    std::vector<std::string> names_b;
    for (const auto& f : files_a) {
        names_a.push_back(f.filename().string());
    }
    for (const auto& f : files_b) {
        names_b.push_back(f.filename().string());
    }

    MetricsReport report;
    std::vector<std::string> matched;
    std::set_intersection(names_a.begin(), names_a.end(), names_b.begin(), names_b.end(),
                          std::back_inserter(matched));
    std::set_symmetric_difference(names_a.begin(), names_a.end(), names_b.begin(), names_b.end(),
                                  std::back_inserter(report.unmatched));

    report.images.resize(matched.size());
    parallel_for(matched.size(), workers, [&](std::size_t i) {
        const Image a = png::load_rgb(dir_a / matched[i]);
        const Image b = png::load_rgb(dir_b / matched[i]);
        report.images[i].name = matched[i];
        report.images[i].scores = metrics::score(a, b);
        report.images[i].scores.psnr = metrics::psnr_display(report.images[i].scores.psnr);
    });

    if (!report.images.empty()) {
        const double n = static_cast<double>(report.images.size());
        for (const auto& item : report.images) {
            report.mean.psnr += item.scores.psnr / n;
            report.mean.ssim += item.scores.ssim / n;
            report.mean.ciede2000 += item.scores.ciede2000 / n;
            report.mean.l1 += item.scores.l1 / n;
        }
    }
    return report;
}

nlohmann::json to_json(const MetricsReport& report) {
    const auto scores_json = [](const metrics::Scores& s) {
        return nlohmann::json{{"psnr", s.psnr}, {"ssim", s.ssim}, {"ciede2000", s.ciede2000}, {"l1", s.l1}};
    };
    nlohmann::json images = nlohmann::json::array();
    for (const auto& item : report.images) {
        nlohmann::json j = scores_json(item.scores);
        j["name"] = item.name;
        images.push_back(j);
    }
    return {{"images", images},
            {"mean", scores_json(report.mean)},
            {"count", report.images.size()},
            {"unmatched", report.unmatched},
            {"psnr_cap_db", metrics::kPsnrDisplayCap}};
}

std::string format_table(const MetricsReport& report) {
    std::size_t name_width = 4;
    for (const auto& item : report.images) {
        name_width = std::max(name_width, item.name.size());
    }
    std::ostringstream out;
    const auto row = [&](const std::string& name, const metrics::Scores& s) {
        out << std::left << std::setw(static_cast<int>(name_width)) << name << std::right << std::fixed
            << std::setprecision(2) << std::setw(9) << s.psnr << std::setprecision(4) << std::setw(9) << s.ssim
            << std::setprecision(3) << std::setw(10) << s.ciede2000 << std::setprecision(4) << std::setw(9) << s.l1
            << '\n';
    };
    out << std::left << std::setw(static_cast<int>(name_width)) << "name" << std::right << std::setw(9) << "PSNR"
        << std::setw(9) << "SSIM" << std::setw(10) << "CIEDE" << std::setw(9) << "L1" << '\n';
    for (const auto& item : report.images) {
        row(item.name, item.scores);
    }
    row("mean", report.mean);
    return out.str();
}

DcpReport run_dcp_dehaze(const DcpOptions& options) {
    const auto inputs = list_pngs(options.hazy_dir);
    if (options.clean_dir) {
        require_dir(*options.clean_dir, "clean directory");
    }
    fs::create_directories(options.out_dir);

    DcpReport report;
    report.log.inputs = inputs.size();
    if (inputs.empty()) {
        report.log.warnings.push_back("no PNG images in '" + options.hazy_dir.string() + "'");
    }
    std::vector<std::optional<DcpImageReport>> items(inputs.size());
    std::vector<std::optional<std::string>> warnings(inputs.size());
    parallel_for(inputs.size(), options.workers, [&](std::size_t i) {
        const fs::path& path = inputs[i];
        try {
            const Image hazy = png::load_rgb(path);
            DcpImageReport item;
            item.name = path.filename().string();
            const Image dehazed = dcp::dcp_dehaze(hazy, options.dcp, item.airlight);
            png::save_rgb8(options.out_dir / path.filename(), dehazed);
            if (options.clean_dir) {
                const fs::path clean_path = *options.clean_dir / path.filename();
                if (fs::exists(clean_path)) {
                    const Image clean = png::load_rgb(clean_path);
                    if (clean.size() == hazy.size()) {
                        item.psnr_hazy = metrics::psnr_display(metrics::psnr(hazy, clean));
                        item.psnr_dehazed = metrics::psnr_display(metrics::psnr(png::quantize_rgb8(dehazed), clean));
                    }
                }
            }
            items[i] = item;
        } catch (const IoError& e) {
            warnings[i] = "skipping '" + path.string() + "': " + e.what();
        } catch (const InvalidParameter& e) {
            warnings[i] = "skipping '" + path.string() + "': " + e.what();
        }
    });
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (items[i]) {
            report.images.push_back(*items[i]);
        }
        if (warnings[i]) {
            report.log.warnings.push_back(*warnings[i]);
            ++report.log.skipped;
        }
    }
    return report;
}

nlohmann::json to_json(const DcpReport& report) {
    nlohmann::json images = nlohmann::json::array();
    for (const auto& item : report.images) {
        nlohmann::json j = {{"name", item.name}, {"airlight", item.airlight.rgb}};
        if (item.psnr_hazy) {
            j["psnr_hazy"] = *item.psnr_hazy;
        }
        if (item.psnr_dehazed) {
            j["psnr_dehazed"] = *item.psnr_dehazed;
        }
        images.push_back(j);
    }
    return {{"images", images}, {"warnings", report.log.warnings}};
}

}  // namespace rehaze::pipeline
