// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fpsens/experiment.hpp"
#include "fpsens/run_config.hpp"
#include "support.hpp"

using namespace fpsens;
using fpsens::test::check_error;

namespace
{
std::string slurp(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> read_csv(std::filesystem::path const& path,
                                          std::string* header = nullptr)
{
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    if (header)
        *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line))
    {
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            row.push_back(std::stod(field));
        rows.push_back(row);
    }
    return rows;
}

std::string fmt_energy_dir(double e)
{
    std::ostringstream ss;
    ss << "beam_" << e << "MeV";
    return ss.str();
}

RunConfig quick_config(std::filesystem::path const& out)
{
    RunConfig c;
    c.slab.n_cells = 60;
    c.pn_order = 7;
    c.output_dir = out;
    return c;
}
}  // namespace

TEST_CASE("config parsing")
{
    auto c = parse_config(R"(# comment
slab.length_cm = 4.5
slab.n_cells = 120   # trailing comment
energy.cutoff_mev = 15
pn.order = 9
beam.kind = mono
beam.center_mev = 7
material = surrogate
run.mode = verify
run.exact_normalization = true
fd.h_rel = 2e-3
fd.node_stride = 3
output.dir = out/run1
)");
    CHECK(c.slab.length_cm == 4.5);
    CHECK(c.slab.n_cells == 120);
    CHECK(c.energy.cutoff_mev == 15);
    CHECK(c.pn_order == 9);
    CHECK(c.beam.kind == BeamKind::mono);
    CHECK(c.beam.center_mev == 7);
    CHECK(c.mode == RunMode::with_fd_verify);
    CHECK(c.exact_normalization);
    CHECK(c.fd.h_rel == 2e-3);
    CHECK(c.fd.node_stride == 3);
    CHECK(c.output_dir == std::filesystem::path("out/run1"));

    RunConfig d;
    CHECK(d.energy.cutoff_mev == 20.5);
    CHECK(d.pn_order == 15);
    CHECK(d.slab.density == 1);
    CHECK(d.slab.n_cells == 300);
}

TEST_CASE("config errors")
{
    check_error([] { parse_config("nonsense = 1\n"); }, ErrorCode::parse_error);
    check_error([] { parse_config("slab.n_cells = 1.5\n"); }, ErrorCode::parse_error);
    check_error([] { parse_config("slab.length_cm = six\n"); }, ErrorCode::parse_error);
    check_error([] { parse_config("just a line\n"); }, ErrorCode::parse_error);
    check_error([] { parse_config("beam.kind = laser\n"); }, ErrorCode::parse_error);
    check_error([] { parse_config("run.mode = fast\n"); }, ErrorCode::invalid_config);
    check_error([] { load_config("/nonexistent/run.cfg"); }, ErrorCode::io_error);

    RunConfig c;
    c.slab.n_cells = 0;
    c.slab.density = -1;
    c.beam.center_mev = 30;
    c.fd.node_stride = 0;
    auto v = config_violations(c);
    CHECK(v.size() == 4);
    try
    {
        validate_config(c);
        FAIL("expected invalid_config");
    }
    catch (Error const& e)
    {
        CHECK(e.code() == ErrorCode::invalid_config);
        std::string msg = e.what();
        for (auto key : {"slab.n_cells", "slab.density", "beam.center_mev",
                         "fd.node_stride"})
            CHECK(msg.find(key) != std::string::npos);
    }
}

TEST_CASE("resolved defaults")
{
    RunConfig c;
    c.beam.center_mev = 6;
    auto r = resolve_run(c);
    CHECK(r.problem.slab.length() == 6);
    CHECK(r.problem.slab.dx() == doctest::Approx(0.02));
    CHECK(r.problem.grid().size() == 575);
    CHECK(r.problem.pn.order == 15);
    CHECK(r.problem.beam.sigma_energy
          == doctest::Approx(0.6 / std::sqrt(2 * std::log(2.0))));
    CHECK(r.warnings.empty());
    // every half MeV is a node
    for (double e = 0.5; e < 20.5; e += 0.5)
        CHECK(std::abs(r.problem.grid().node(r.problem.grid().nearest_node(e)) - e)
              < 1e-9);

    c.beam.center_mev = 16;
    auto deep = resolve_run(c);
    CHECK(deep.problem.slab.length() == 9);
    CHECK(!deep.warnings.empty());
}

TEST_CASE("mono beams snap to the nearest node with a warning")
{
    RunConfig c;
    c.beam.kind = BeamKind::mono;
    c.beam.center_mev = 10;
    CHECK(resolve_run(c).warnings.empty());
    c.beam.center_mev = 10.01;
    auto r = resolve_run(c);
    CHECK(r.problem.beam.center == doctest::Approx(10).epsilon(1e-12));
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("snapped") != std::string::npos);
}

TEST_CASE("forward-only run writes the dose files")
{
    auto dir = test::scratch_dir("exp_forward");
    RunConfig c;
    c.beam.center_mev = 6;
    c.mode = RunMode::forward_only;
    c.output_dir = dir;
    auto result = run(c);
    CHECK(!result.rel_s);
    CHECK(std::filesystem::exists(dir / "dose_profile.csv"));
    CHECK(std::filesystem::exists(dir / "pdd.csv"));
    CHECK(!std::filesystem::exists(dir / "kernels.csv"));
    CHECK(!std::filesystem::exists(dir / "summary.json"));
    std::string header;
    auto rows = read_csv(dir / "dose_profile.csv", &header);
    CHECK(header == "x_cm,value");
    REQUIRE(rows.size() == 300);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i][0] > rows[i - 1][0]);
    CHECK(rows.front()[0] == doctest::Approx(0.01));
    CHECK(rows.back()[0] == doctest::Approx(5.99));
    auto pdd_rows = read_csv(dir / "pdd.csv");
    double peak = 0;
    for (auto const& row : pdd_rows)
        peak = std::max(peak, row[1]);
    CHECK(peak == 100);
}

TEST_CASE("sensitivity run: summary keys and recomputation")
{
    auto dir = test::scratch_dir("exp_sens");
    auto result = run(quick_config(dir));
    auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    std::vector<std::string> keys;
    for (auto const& item : summary.items())
        keys.push_back(item.key());
    std::sort(keys.begin(), keys.end());
    CHECK(keys
          == std::vector<std::string>{"D_bar", "balance_residual", "sup_norm_rel_S",
                                      "sup_norm_rel_T", "x_bar", "x_norm"});

    auto rows = read_csv(dir / "dose_profile.csv");
    double dx = 2 * rows[0][0];
    double xb = 0, db = 0;
    for (auto const& row : rows)
    {
        xb += dx * row[0] * row[1];
        db += dx * row[1];
    }
    CHECK(summary["x_norm"].get<double>() == doctest::Approx(xb / db).epsilon(1e-9));
    CHECK(summary["D_bar"].get<double>() == doctest::Approx(db).epsilon(1e-9));
    CHECK(summary["sup_norm_rel_S"].get<double>() == result.rel_s->sup_norm);

    std::string header;
    auto k = read_csv(dir / "kernels.csv", &header);
    CHECK(header == "energy_mev,g_S,g_T,rel_S,rel_T");
    CHECK(k.size() == result.n_energy_nodes);
    CHECK(!std::filesystem::exists(dir / "fd_report.csv"));
}

TEST_CASE("runs are byte-for-byte deterministic")
{
    auto a = test::scratch_dir("exp_det_a");
    auto b = test::scratch_dir("exp_det_b");
    run(quick_config(a));
    run(quick_config(b));
    for (auto name : {"dose_profile.csv", "pdd.csv", "kernels.csv", "summary.json"})
        CHECK_MESSAGE(slurp(a / name) == slurp(b / name), name);
}

TEST_CASE("verify run writes the fd report")
{
    auto dir = test::scratch_dir("exp_verify");
    auto c = quick_config(dir);
    c.slab.length_cm = 3;
    c.slab.n_cells = 30;
    c.energy.cutoff_mev = 8;
    c.beam.kind = BeamKind::mono;
    c.beam.center_mev = 5;
    c.mode = RunMode::with_fd_verify;
    c.fd.node_stride = 4;
    auto result = run(c);
    REQUIRE(result.fd_s);
    REQUIRE(result.fd_t);
    CHECK(result.fd_s->rel_error_linf <= 5e-3);
    CHECK(result.fd_t->rel_error_linf <= 1e-3);
    auto text = slurp(dir / "fd_report.csv");
    CHECK(text.rfind("energy_mev,fd,adjoint,abs_err\n", 0) == 0);
    CHECK(text.find("# parameter=S") != std::string::npos);
    CHECK(text.find("# parameter=T") != std::string::npos);
}

TEST_CASE("exact normalization run")
{
    auto dir = test::scratch_dir("exp_exact");
    auto c = quick_config(dir);
    auto approx = run(c);
    c.exact_normalization = true;
    auto exact = run(c);
    CHECK(exact.rel_s->mode == NormalizationMode::exact);
    CHECK(exact.rel_s->sup_norm != approx.rel_s->sup_norm);
    CHECK(exact.rel_s->sup_norm == doctest::Approx(approx.rel_s->sup_norm).epsilon(0.05));
}

TEST_CASE("table1: empty batch")
{
    auto dir = test::scratch_dir("exp_empty");
    check_error([&] { table1(quick_config(dir), {}); }, ErrorCode::empty_batch);
    CHECK(!std::filesystem::exists(dir / "table1.csv"));
}

TEST_CASE("table1: failure keeps finished rows")
{
    auto dir = test::scratch_dir("exp_partial");
    check_error([&] { table1(quick_config(dir), {6, 30}); },
                ErrorCode::invalid_config);
    CHECK(!std::filesystem::exists(dir / "table1.csv"));
    auto rows = read_csv(dir / "table1.partial.csv");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][0] == 6);
    CHECK(std::filesystem::exists(dir / "beam_6MeV" / "summary.json"));
}

TEST_CASE("table1: surrogate regression baselines")
{
    auto dir = test::scratch_dir("exp_table1");
    RunConfig c;
    c.output_dir = dir;
    auto rows = table1(c);
    auto baseline = read_csv(std::filesystem::path(FPSENS_TEST_DATA_DIR)
                             / "surrogate_table1.csv");
    REQUIRE(rows.size() == baseline.size());
    std::string header;
    auto written = read_csv(dir / "table1.csv", &header);
    CHECK(header == "beam_energy_mev,x_norm,sup_norm_rel_T,sup_norm_rel_S");
    for (std::size_t n = 0; n < rows.size(); ++n)
    {
        CHECK(rows[n].beam_energy_mev == baseline[n][0]);
        CHECK(rows[n].x_norm == doctest::Approx(baseline[n][1]).epsilon(1e-6));
        CHECK(rows[n].sup_norm_rel_t == doctest::Approx(baseline[n][2]).epsilon(1e-6));
        CHECK(rows[n].sup_norm_rel_s == doctest::Approx(baseline[n][3]).epsilon(1e-6));
        CHECK(written[n] == std::vector<double>{rows[n].beam_energy_mev,
                                                rows[n].x_norm,
                                                rows[n].sup_norm_rel_t,
                                                rows[n].sup_norm_rel_s});
        CHECK(std::filesystem::exists(
            dir / fmt_energy_dir(rows[n].beam_energy_mev) / "kernels.csv"));
    }
}
