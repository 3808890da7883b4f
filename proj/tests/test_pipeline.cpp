#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "rehaze/cli.hpp"
#include "rehaze/depth_io.hpp"
#include "rehaze/pipeline.hpp"
#include "rehaze/png_io.hpp"
#include "rehaze/rehazy.hpp"
#include "rehaze/synthetic.hpp"
#include "support.hpp"

using namespace rehaze;
using namespace rehaze::pipeline;
using rehaze::test::TempDir;
using rehaze::test::file_bytes;

namespace {

// Writes n clean scenes and matching 16-bit depths named scene_<i>.png.
void write_fixture(const fs::path& clean_dir, const fs::path& depth_dir, int n, Size size = {32, 40}) {
    fs::create_directories(clean_dir);
    fs::create_directories(depth_dir);
    Rng rng(1234);
    for (int i = 0; i < n; ++i) {
        const std::string name = "scene_" + std::to_string(i) + ".png";
        png::save_rgb8(clean_dir / name, synthetic::random_scene(size, rng));
        png::save_gray16(depth_dir / name, synthetic::random_depth(size, rng));
    }
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli_run(std::vector<std::string> args) {
    args.insert(args.begin(), "rehaze");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<char>> dir_bytes(const fs::path& dir) {
    std::vector<std::vector<char>> all;
    for (const auto& p : list_pngs(dir)) {
        all.push_back(file_bytes(p));
    }
    return all;
}

}  // namespace

TEST(ListPngs, SortedCaseInsensitive) {
    TempDir dir;
    for (const char* name : {"b.png", "a.PNG", "c.jpg", "d.png.txt"}) {
        std::ofstream(dir / name) << "x";
    }
    const auto files = list_pngs(dir.path());
    ASSERT_EQ(files.size(), 2u);
    EXPECT_EQ(files[0].filename(), "a.PNG");
    EXPECT_EQ(files[1].filename(), "b.png");
}

TEST(ParallelFor, VisitsEveryIndexAndRethrows) {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) {
        EXPECT_EQ(h, 1);
    }
    EXPECT_THROW(parallel_for(10, 3,
                              [](std::size_t i) {
                                  if (i == 7) {
                                      throw IoError("boom");
                                  }
                              }),
                 IoError);
}

TEST(Synth, WritesFilesAndManifest) {
    TempDir dir;
    write_fixture(dir / "clean", dir / "depth", 2);
    SynthOptions o;
    o.clean_dir = dir / "clean";
    o.depth_dir = dir / "depth";
    o.out_dir = dir / "out";
    o.seed = 5;
    o.count_per_image = 3;
    o.emit_pyramid = true;
    const auto result = run_synth(o);
    EXPECT_EQ(exit_code(result.log), kSuccess);
    ASSERT_EQ(result.manifest.entries.size(), 6u);
    EXPECT_EQ(read_manifest(dir / "out" / "manifest.json"), result.manifest);
    for (const auto& e : result.manifest.entries) {
        for (const auto& f : referenced_files(e, dir / "out")) {
            EXPECT_TRUE(fs::exists(f)) << f;
        }
        EXPECT_TRUE(o.profile.beta_range.contains(*e.beta));
        EXPECT_TRUE(o.profile.a_range.contains(e.airlight[0]));
    }
    EXPECT_EQ(png::load_rgb(dir / "out" / "targets" / "scene_0_ds2.png").size(), (Size{16, 20}));
    EXPECT_EQ(png::load_rgb(dir / "out" / "targets" / "scene_0_ds4.png").size(), (Size{8, 10}));
}

TEST(Synth, RerunAndWorkerCountAreBitIdentical) {
    TempDir dir;
    write_fixture(dir / "clean", dir / "depth", 5);
    SynthOptions o;
    o.clean_dir = dir / "clean";
    o.depth_dir = dir / "depth";
    o.seed = 77;
    o.count_per_image = 2;
    o.out_dir = dir / "one";
    o.workers = 1;
    const auto first = run_synth(o);
    o.out_dir = dir / "four";
    o.workers = 4;
    const auto second = run_synth(o);
    EXPECT_EQ(first.manifest, second.manifest);
    EXPECT_EQ(dir_bytes(dir / "one" / "hazy"), dir_bytes(dir / "four" / "hazy"));
    EXPECT_EQ(dir_bytes(dir / "one" / "hazy").size(), 10u);
}

// Outdoor haze keeps t >= exp(-0.3), so 8-bit error stays within 1/255 after inversion.
TEST(Synth, HazyFilesInvertToCleanWithinQuantization) {
    TempDir dir;
    write_fixture(dir / "clean", dir / "depth", 3);
    SynthOptions o;
    o.clean_dir = dir / "clean";
    o.depth_dir = dir / "depth";
    o.out_dir = dir / "out";
    o.profile = SceneProfile::outdoor();
    const auto result = run_synth(o);
    for (const auto& e : result.manifest.entries) {
        const Image clean = png::load_rgb(*e.clean_path);
        const Image hazy = png::load_rgb(dir / "out" / e.hazy_path);
        const DepthMap d = depth::load_depth_auto(e.depth_path);
        const Image back = invert_asm(hazy, transmission(d, *e.beta), e.airlight);
        EXPECT_LE(test::max_abs_diff(back.values(), clean.values()), 1.0 / 255.0);
    }
}

TEST(Synth, EmptyInputGivesEmptyManifestAndWarning) {
    TempDir dir;
    fs::create_directories(dir / "clean");
    fs::create_directories(dir / "depth");
    const auto r = cli_run({"synth", "--clean-dir", (dir / "clean").string(), "--depth-dir",
                            (dir / "depth").string(), "--out-dir", (dir / "out").string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("warning"), std::string::npos);
    EXPECT_TRUE(read_manifest(dir / "out" / "manifest.json").entries.empty());
}

TEST(Synth, MissingDepthSkipsWithWarning) {
    TempDir dir;
    write_fixture(dir / "clean", dir / "depth", 3);
    fs::remove(dir / "depth" / "scene_1.png");
    SynthOptions o;
    o.clean_dir = dir / "clean";
    o.depth_dir = dir / "depth";
    o.out_dir = dir / "out";
    const auto partial = run_synth(o);
    EXPECT_EQ(partial.manifest.entries.size(), 2u);
    EXPECT_EQ(partial.log.skipped, 1u);
    ASSERT_EQ(partial.log.warnings.size(), 1u);
    EXPECT_NE(partial.log.warnings[0].find("scene_1.png"), std::string::npos);
    EXPECT_EQ(exit_code(partial.log), kSuccess);

    fs::remove(dir / "depth" / "scene_0.png");
    fs::remove(dir / "depth" / "scene_2.png");
    const auto r = cli_run({"synth", "--clean-dir", (dir / "clean").string(), "--depth-dir",
                            (dir / "depth").string(), "--out-dir", (dir / "out2").string()});
    EXPECT_EQ(r.code, kUsageOrIoError);
}

TEST(Synth, ConstantDepthIsSkipped) {
    TempDir dir;
    write_fixture(dir / "clean", dir / "depth", 2);
    png::save_gray16(dir / "depth" / "scene_0.png", Plane(32, 40, 0.5));
    SynthOptions o;
    o.clean_dir = dir / "clean";
    o.depth_dir = dir / "depth";
    o.out_dir = dir / "out";
    const auto result = run_synth(o);
    EXPECT_EQ(result.log.skipped, 1u);
    EXPECT_EQ(result.manifest.entries.size(), 1u);
}

TEST(Rehazy, ZeroIncrementReproducesInputBytes) {
    TempDir dir;
    write_fixture(dir / "hazy", dir / "depth", 3);
    const auto r = cli_run({"rehazy", "--hazy-dir", (dir / "hazy").string(), "--depth-dir", (dir / "depth").string(),
                            "--out-dir", (dir / "out").string(), "--delta-beta", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Manifest m = read_manifest(dir / "out" / "manifest.json");
    ASSERT_EQ(m.entries.size(), 3u);
    for (const auto& e : m.entries) {
        ASSERT_EQ(e.rehazy_paths.size(), 1u);
        EXPECT_EQ(e.delta_betas, (std::vector<double>{0.0}));
        EXPECT_EQ(png::load_rgb(dir / "out" / e.rehazy_paths[0]), png::load_rgb(e.hazy_path));
    }
}

TEST(Rehazy, RecordsParametersAndMatchesModel) {
    TempDir dir;
    write_fixture(dir / "hazy", dir / "depth", 2);
    RehazyOptions o;
    o.hazy_dir = dir / "hazy";
    o.depth_dir = dir / "depth";
    o.out_dir = dir / "out";
    o.n_rehazy = 3;
    o.airlight = Airlight{{0.9, 0.85, 0.8}};
    const auto result = run_rehazy(o);
    ASSERT_EQ(result.manifest.entries.size(), 2u);
    for (const auto& e : result.manifest.entries) {
        EXPECT_EQ(e.airlight, *o.airlight);
        ASSERT_EQ(e.delta_betas.size(), 3u);
        const Image hazy = png::load_rgb(e.hazy_path);
        const DepthMap d = depth::load_depth_auto(e.depth_path);
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_TRUE(o.profile.delta_beta_range.contains(e.delta_betas[k]));
            const Image expected = png::quantize_rgb8(generate_rehazy(hazy, d, e.airlight, e.delta_betas[k]));
            EXPECT_EQ(png::load_rgb(dir / "out" / e.rehazy_paths[k]), expected);
        }
    }
}

TEST(Rehazy, EstimatesAirlightWhenNotGiven) {
    TempDir dir;
    write_fixture(dir / "hazy", dir / "depth", 1);
    RehazyOptions o;
    o.hazy_dir = dir / "hazy";
    o.depth_dir = dir / "depth";
    o.out_dir = dir / "out";
    const auto result = run_rehazy(o);
    ASSERT_EQ(result.manifest.entries.size(), 1u);
    const Image hazy = png::load_rgb(dir / "hazy" / "scene_0.png");
    EXPECT_EQ(result.manifest.entries[0].airlight, dcp::estimate_airlight(hazy, 15, 0.001));
}

TEST(Rehazy, WorkerCountIsBitIdentical) {
    TempDir dir;
    write_fixture(dir / "hazy", dir / "depth", 4);
    RehazyOptions o;
    o.hazy_dir = dir / "hazy";
    o.depth_dir = dir / "depth";
    o.seed = 3;
    o.n_rehazy = 2;
    o.out_dir = dir / "one";
    o.workers = 1;
    const auto first = run_rehazy(o);
    o.out_dir = dir / "four";
    o.workers = 4;
    const auto second = run_rehazy(o);
    EXPECT_EQ(first.manifest, second.manifest);
    EXPECT_EQ(dir_bytes(dir / "one" / "rehazy"), dir_bytes(dir / "four" / "rehazy"));
}

TEST(Verify, AllChecksPassOnDefaults) {
    VerifyOptions o;
    o.scenes = 10;
    o.trials = 200;
    o.size = 32;
    const VerifyReport report = run_verify(o);
    EXPECT_TRUE(report.passed());
    EXPECT_GE(report.checks.size(), 4u);
    for (const auto& c : report.checks) {
        EXPECT_TRUE(c.passed) << c.name << " " << c.max_error;
        EXPECT_GT(c.samples, 0) << c.name;
    }
    const auto j = to_json(report);
    EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Verify, CliExitCodes) {
    TempDir dir;
    const auto ok = cli_run({"verify", "--mode", "semigroup", "--trials", "50", "--report",
                             (dir / "r.json").string()});
    EXPECT_EQ(ok.code, 0) << ok.err;
    std::ifstream in(dir / "r.json");
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["checks"][0]["name"], "semigroup");

    const auto composition = cli_run({"verify", "--mode", "composition", "--scenes", "5", "--size", "24",
                                      "--beta0", "0.01", "--delta-beta", "0.01"});
    EXPECT_EQ(composition.code, 0) << composition.err;

    EXPECT_EQ(cli_run({"verify", "--mode", "bogus"}).code, kUsageOrIoError);
}

TEST(Metrics, DirectoryAgainstItself) {
    TempDir dir;
    write_fixture(dir / "a", dir / "d", 3);
    const auto report = run_metrics(dir / "a", dir / "a");
    ASSERT_EQ(report.images.size(), 3u);
    for (const auto& item : report.images) {
        EXPECT_EQ(item.scores.psnr, 99.0);
        EXPECT_NEAR(item.scores.ssim, 1.0, 1e-12);
        EXPECT_EQ(item.scores.ciede2000, 0.0);
        EXPECT_EQ(item.scores.l1, 0.0);
    }
    EXPECT_EQ(report.mean.psnr, 99.0);
    const auto j = to_json(report);
    EXPECT_EQ(j["count"], 3);
    EXPECT_NE(format_table(report).find("99.00"), std::string::npos);
}

// An offset of 0.1 is 25.5 levels in 8 bits. Mixing offsets of 26 (303
// samples) and 25 (309 samples) gives a mean squared offset of 650.25 levels^2,
// which is exactly 0.01 and therefore 20 dB.
TEST(Metrics, OffsetFixtureIsTwentyDb) {
    TempDir dir;
    fs::create_directories(dir / "a");
    fs::create_directories(dir / "b");
    const int h = 12;
    const int w = 17;
    std::vector<std::uint16_t> low(static_cast<std::size_t>(h * w * 3));
    std::vector<std::uint16_t> high(low.size());
    for (std::size_t i = 0; i < low.size(); ++i) {
        low[i] = static_cast<std::uint16_t>((i * 37) % 200);
        high[i] = static_cast<std::uint16_t>(low[i] + (i < 303 ? 26 : 25));
    }
    png::write(dir / "a" / "x.png", png::RawImage{h, w, 3, 8, low});
    png::write(dir / "b" / "x.png", png::RawImage{h, w, 3, 8, high});
    const auto report = run_metrics(dir / "a", dir / "b");
    ASSERT_EQ(report.images.size(), 1u);
    EXPECT_NEAR(report.images[0].scores.psnr, 20.0, 1e-6);
    const auto r = cli_run({"metrics", "--dir-a", (dir / "a").string(), "--dir-b", (dir / "b").string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("20.00"), std::string::npos);
}

TEST(Metrics, UnmatchedAndEmptyDirectoriesFail) {
    TempDir dir;
    write_fixture(dir / "a", dir / "d", 2);
    fs::create_directories(dir / "b");
    fs::copy_file(dir / "a" / "scene_0.png", dir / "b" / "scene_0.png");
    const auto report = run_metrics(dir / "a", dir / "b");
    EXPECT_EQ(report.unmatched, (std::vector<std::string>{"scene_1.png"}));
    EXPECT_EQ(cli_run({"metrics", "--dir-a", (dir / "a").string(), "--dir-b", (dir / "b").string()}).code,
              kUsageOrIoError);
    fs::create_directories(dir / "e1");
    fs::create_directories(dir / "e2");
    EXPECT_THROW(run_metrics(dir / "e1", dir / "e2"), IoError);
    EXPECT_EQ(cli_run({"metrics", "--dir-a", (dir / "e1").string(), "--dir-b", (dir / "e2").string()}).code,
              kUsageOrIoError);
}

TEST(DcpDehazeCommand, WritesOutputsAndScores) {
    TempDir dir;
    write_fixture(dir / "clean", dir / "depth", 2);
    SynthOptions s;
    s.clean_dir = dir / "clean";
    s.depth_dir = dir / "depth";
    s.out_dir = dir / "synth";
    run_synth(s);
    fs::create_directories(dir / "gt");
    for (const auto& e : read_manifest(dir / "synth" / "manifest.json").entries) {
        fs::copy_file(*e.clean_path, dir / "gt" / fs::path(e.hazy_path).filename());
    }
    DcpOptions o;
    o.hazy_dir = dir / "synth" / "hazy";
    o.out_dir = dir / "dehazed";
    o.clean_dir = dir / "gt";
    const DcpReport report = run_dcp_dehaze(o);
    ASSERT_EQ(report.images.size(), 2u);
    for (const auto& item : report.images) {
        EXPECT_TRUE(fs::exists(dir / "dehazed" / item.name));
        ASSERT_TRUE(item.psnr_hazy.has_value());
        ASSERT_TRUE(item.psnr_dehazed.has_value());
    }
    EXPECT_EQ(to_json(report)["images"].size(), 2u);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli_run({}).code, kUsageOrIoError);
    EXPECT_EQ(cli_run({"nonsense"}).code, kUsageOrIoError);
    EXPECT_EQ(cli_run({"synth"}).code, kUsageOrIoError);
    EXPECT_EQ(cli_run({"--help"}).code, kSuccess);
    EXPECT_EQ(cli_run({"rehazy", "--hazy-dir", "/nonexistent", "--depth-dir", "/nonexistent", "--out-dir",
                       "/tmp/x", "--airlight", "1.5,0.2,0.2"})
                  .code,
              kUsageOrIoError);
    EXPECT_EQ(cli_run({"verify", "--config", "/nonexistent.conf"}).code, kUsageOrIoError);
}

TEST(Cli, ProfileOverridesAndConfigPrecedence) {
    TempDir dir;
    write_fixture(dir / "clean", dir / "depth", 1);
    std::ofstream(dir / "c.conf") << "profile = outdoor\nbeta_min = 0.2\nbeta_max = 0.25\nseed = 4\n";
    const auto r = cli_run({"synth", "--config", (dir / "c.conf").string(), "--clean-dir",
                            (dir / "clean").string(), "--depth-dir", (dir / "depth").string(), "--out-dir",
                            (dir / "out").string(), "--seed", "9", "--beta-max", "0.21"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Manifest m = read_manifest(dir / "out" / "manifest.json");
    EXPECT_EQ(m.run_seed, 9u);
    EXPECT_EQ(m.profile.kind, SceneKind::outdoor);
    EXPECT_EQ(m.profile.beta_range, (Range{0.2, 0.21}));
    EXPECT_EQ(m.profile.a_range, SceneProfile::outdoor().a_range);
    ASSERT_EQ(m.entries.size(), 1u);
    EXPECT_TRUE(m.profile.beta_range.contains(*m.entries[0].beta));

    const auto bad = cli_run({"synth", "--clean-dir", (dir / "clean").string(), "--depth-dir",
                              (dir / "depth").string(), "--out-dir", (dir / "out").string(), "--beta-min", "0.5",
                              "--beta-max", "0.1"});
    EXPECT_EQ(bad.code, kUsageOrIoError);
}
