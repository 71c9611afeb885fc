#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mblab/config.hpp"
#include "mblab/csv.hpp"
#include "mblab/runner.hpp"
#include "mblab/sha256.hpp"
#include "mblab/svg.hpp"

#include <json.hpp>

using namespace mblab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "mblab_test" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("config parsing, overrides, schema") {
    RunConfig cfg = RunConfig::from_text("# comment\n N = 512 \n\nbeta=3\n");
    CHECK(cfg.get_double("N", 0) == 512.0);
    CHECK(cfg.get_double("beta", 0) == 3.0);
    cfg.apply_override("beta=-3");
    CHECK(cfg.get_double("beta", 0) == -3.0);
    CHECK(cfg.get_int("missing", 7) == 7);
    CHECK_THROWS_AS(cfg.validate_keys({"N"}), ConfigError);
    CHECK_NOTHROW(cfg.validate_keys({"N", "beta"}));
    CHECK_THROWS_AS(RunConfig::from_text("novalue\n"), ConfigError);
    CHECK_THROWS_AS(cfg.get_double("N", 0) + RunConfig::from_text("x=abc\n").get_double("x", 0),
                    ConfigError);
    const auto list = RunConfig::from_text("k=1,2.5,3\n").get_double_list("k", {});
    REQUIRE(list.size() == 3);
    CHECK(list[1] == 2.5);
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex(std::string("")) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex(std::string("abc")) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("csv writer layout") {
    CsvWriter w({"a", "b"});
    w.cell(1.5).cell(static_cast<long long>(2));
    w.end_row();
    CHECK(w.text() == "a,b\n1.5,2\n");
    CHECK_THROWS_AS((w.cell(1.0), w.end_row()), std::logic_error);
}

TEST_CASE("unknown config keys exit with usage status 2") {
    const fs::path dir = fresh_dir("schema");
    RunOptions opt;
    opt.command = "resonance";
    opt.out_dir = dir.string();
    opt.overrides = {"bogus_key=1"};
    CHECK(run_command(opt) == 2);
}

TEST_CASE("resonance command emits summary and manifest with digests") {
    const fs::path dir = fresh_dir("resonance");
    RunOptions opt;
    opt.command = "resonance";
    opt.out_dir = dir.string();
    opt.overrides = {"N=1024", "beta=-3"};
    CHECK(run_command(opt) == 0);
    const auto manifest = nlohmann::json::parse(slurp(dir / "run_manifest.json"));
    CHECK(manifest["pass"].get<bool>());
    bool found = false;
    for (const auto& f : manifest["outputs"]) {
        const std::string rel = f["path"].get<std::string>();
        const std::string digest = sha256_file_hex((dir / rel).string());
        CHECK(digest == f["sha256"].get<std::string>());
        found = found || rel == "resonance_summary.json";
    }
    CHECK(found);
}

TEST_CASE("identical seeds reproduce byte-identical lemma scans") {
    const fs::path d1 = fresh_dir("lemmas1"), d2 = fresh_dir("lemmas2");
    RunOptions opt;
    opt.command = "lemmas";
    opt.seed = 42;
    opt.overrides = {"n_samples=10", "lemmas=quad-sharp,cubic-sharp"};
    opt.out_dir = d1.string();
    CHECK(run_command(opt) == 0);
    opt.out_dir = d2.string();
    CHECK(run_command(opt) == 0);
    CHECK(slurp(d1 / "lemmas.csv") == slurp(d2 / "lemmas.csv"));
    CHECK(slurp(d1 / "lemmas_summary.json") == slurp(d2 / "lemmas_summary.json"));
}

TEST_CASE("growth command: csv, fit json, svg regenerable from the data") {
    const fs::path dir = fresh_dir("growth");
    RunOptions opt;
    opt.command = "growth";
    opt.out_dir = dir.string();
    opt.overrides = {"construction=beta-positive", "s=0", "n_min_exp=8", "n_max_exp=12"};
    CHECK(run_command(opt) == 0);
    const auto fit = nlohmann::json::parse(slurp(dir / "growth_fit.json"));
    CHECK(fit["pass"].get<bool>());
    CHECK(std::abs(fit["slope"].get<double>() - 0.5) <= 0.1);

    // the SVG is a pure function of the CSV payload
    const std::string csv = slurp(dir / "growth.csv");
    LogLogPlot plot;
    plot.title = "beta-positive s=0";
    plot.y_label = "E1 norm";
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 8);
        plot.points.emplace_back(std::stod(cells[5]), std::stod(cells[7]));
    }
    plot.fit_slope = fit["slope"].get<double>();
    plot.fit_intercept = fit["intercept"].get<double>();
    plot.reference_slope = fit["predicted_exponent"].get<double>();
    plot.has_reference = true;
    CHECK(render_loglog_svg(plot) == slurp(dir / "growth.svg"));
}

TEST_CASE("solve and crosscheck commands emit their summaries") {
    const fs::path sdir = fresh_dir("solve");
    RunOptions opt;
    opt.command = "solve";
    opt.out_dir = sdir.string();
    opt.overrides = {"T=0.25", "samples=2"};
    CHECK(run_command(opt) == 0);
    const auto sj = nlohmann::json::parse(slurp(sdir / "solve_summary.json"));
    CHECK(sj["pass"].get<bool>());
    CHECK(sj["mass_u_rel_drift"].get<double>() <= 1e-12);
    const std::string diag = slurp(sdir / "diagnostics.csv");
    CHECK(diag.rfind("t,mass_u,mass_v,l2_energy,hamiltonian\n", 0) == 0);

    const fs::path cdir = fresh_dir("scaling");
    RunOptions sc;
    sc.command = "crosscheck";
    sc.out_dir = cdir.string();
    sc.overrides = {"mode=scaling", "T=0.25"};
    CHECK(run_command(sc) == 0);
    const auto cj = nlohmann::json::parse(slurp(cdir / "scaling_summary.json"));
    CHECK(cj["pass"].get<bool>());
    CHECK(cj["max_dev_u"].get<double>() <= 1e-6);

    RunOptions bad = sc;
    bad.overrides = {"mode=nonsense"};
    CHECK(run_command(bad) == 2);
}

TEST_CASE("config file feeds a run end to end") {
    const fs::path dir = fresh_dir("cfgfile");
    const fs::path cfg = dir / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "# resonance scan configuration\nN = 1024\nbeta = 3\n";
    }
    RunOptions opt;
    opt.command = "resonance";
    opt.config_path = cfg.string();
    opt.out_dir = (dir / "out").string();
    CHECK(run_command(opt) == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "out" / "resonance_summary.json"));
    CHECK(j["beta"].get<double>() == 3.0);
    CHECK(j["both_factors_zero"].get<bool>());
}

TEST_CASE("report intersects slope(s) with zero") {
    const fs::path dir = fresh_dir("report");
    RunOptions opt;
    opt.command = "growth";
    for (double s : {0.0, 0.25, 0.5}) {
        opt.out_dir = (dir / ("s" + std::to_string(s))).string();
        opt.overrides = {"construction=beta-positive", "s=" + format_double(s),
                         "n_min_exp=8", "n_max_exp=12"};
        CHECK(run_command(opt) == 0);
    }
    RunOptions rep;
    rep.command = "report";
    rep.out_dir = (dir / "summary").string();
    rep.overrides = {"in_dir=" + dir.string()};
    CHECK(run_command(rep) == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "summary" / "report.json"));
    CHECK(j["pass"].get<bool>());
    CHECK(std::abs(j["beta-positive"]["s_star_measured"].get<double>() - 0.5) <= 0.05);
}
