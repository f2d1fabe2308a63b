#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "rissk/sweep.hpp"

using namespace rissk;

namespace {

SweepSpec parse(const std::string& text) {
    std::istringstream in(text);
    return parse_sweep_config(in);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

}  // namespace

TEST_CASE("config parsing with defaults") {
    const auto spec = parse(
        "# comment line\n"
        "schemes = ssk, rpm-8   # trailing comment\n"
        "\n"
        "n = 16, 64\n"
        "nr = 2\n"
        "snr_db = -40:10:5\n");
    REQUIRE(spec.schemes.size() == 2);
    CHECK(spec.schemes[0].scheme == Scheme::ssk);
    CHECK(spec.schemes[1].scheme == Scheme::rpm);
    CHECK(spec.schemes[1].m_order == 8);
    CHECK(spec.n_values == std::vector<int>{16, 64});
    CHECK(spec.nr_values == std::vector<int>{2});
    CHECK(spec.m_values == std::vector<double>{1.0});
    CHECK(spec.k_values == std::vector<double>{0.0});
    CHECK(spec.omega == 1.0);
    CHECK(spec.p == 0.0);
    REQUIRE(spec.snr_db.size() == 11);
    CHECK(spec.snr_db.front() == -40.0);
    CHECK(spec.snr_db.back() == 10.0);
    CHECK(spec.trials == 0);
    CHECK(spec.seed == 1);
    CHECK(spec.mode == McMode::exact);
    CHECK(spec.output == "sweep.csv");
}

TEST_CASE("snr grids accept lists, single values, and ranges") {
    const std::string base = "schemes = ssk\nn = 4\nnr = 2\n";
    CHECK(parse(base + "snr_db = 3\n").snr_db == std::vector<double>{3.0});
    CHECK(parse(base + "snr_db = 1, 2.5, -7\n").snr_db == std::vector<double>{1.0, 2.5, -7.0});
    const auto range = parse(base + "snr_db = -4:-2:1\n").snr_db;
    CHECK(range == std::vector<double>{-4.0, -3.0, -2.0});
}

TEST_CASE("config errors carry the line number") {
    const std::string base = "schemes = ssk\nn = 4\nnr = 2\nsnr_db = 0\n";
    const auto expect_line = [](const std::string& text, int line) {
        try {
            parse(text);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.line_number == line);
            CHECK(std::string(e.what()).find("line " + std::to_string(line)) !=
                  std::string::npos);
        }
    };
    expect_line("schemes = ssk\nn = 4\nnot a key value pair\n", 3);
    expect_line(base + "unknown_key = 3\n", 5);
    expect_line("schemes = qam\n", 1);
    expect_line("schemes = rpm-3\n", 1);
    expect_line(base + "m = -1\n", 5);
    expect_line(base + "k = 1.5\n", 5);
    expect_line(base + "p = 1.0\n", 5);
    expect_line("schemes = ssk\nn = 4\nnr = 2\nsnr_db = 0:10:-5\n", 4);
    expect_line("schemes = ssk\nn = 4\nnr = 2\nsnr_db = 10:0:5\n", 4);
    expect_line("schemes = ssk\nn = 4\nnr = 2\nsnr_db = 1:2\n", 4);
    expect_line(base + "trials = -5\n", 5);
    expect_line(base + "n = 4.5\n", 5);
    expect_line(base + "mode = fast\n", 5);
    expect_line(base + "m =\n", 5);
    // Missing required keys report at end of file.
    expect_line("schemes = ssk\nn = 4\nnr = 2\n", 3);
}

TEST_CASE("csv header is the pinned schema") {
    CHECK(csv_header() ==
          "scheme,N,N_R,m,omega,p,k,M,gamma_db,trials,mode,ped_mc,ped_mc_stderr,"
          "ped_analytic,ped_high_snr,ped_low_snr,ped_zero_snr,ber_bound,vacuous");
}

TEST_CASE("analytic-only rows leave sampling fields empty") {
    PointRequest req;
    req.cfg.scheme = Scheme::ssk;
    req.cfg.n = 8;
    req.cfg.n_r = 2;
    req.cfg.es = 0.0;
    req.gamma_db = -300.0;
    const auto rec = evaluate_point(req);
    CHECK_FALSE(rec.mc.has_value());
    const auto fields = split(csv_row(rec), ',');
    REQUIRE(fields.size() == 19);
    CHECK(fields[0] == "ssk");
    CHECK(fields[1] == "8");
    CHECK(fields[2] == "2");
    CHECK(fields[7] == "");    // constellation order: index keying only
    CHECK(fields[9] == "");    // trials
    CHECK(fields[10] == "");   // mode
    CHECK(fields[11] == "");   // ped_mc
    CHECK(fields[12] == "");   // ped_mc_stderr
    CHECK(fields[13] == "5.000000000e-01");
    CHECK(fields[16] == "5.000000000e-01");
    CHECK(fields[18] == "0");
}

TEST_CASE("sampled rows carry the estimate and the bound flags vacuity") {
    PointRequest req;
    req.cfg.scheme = Scheme::rpm;
    req.cfg.m_order = 4;
    req.cfg.n = 4;
    req.cfg.n_r = 4;
    req.cfg.es = 1e-4;
    req.gamma_db = -40.0;
    req.trials = 5000;
    req.mode = McMode::surrogate;
    const auto rec = evaluate_point(req);
    REQUIRE(rec.mc.has_value());
    const auto fields = split(csv_row(rec), ',');
    REQUIRE(fields.size() == 19);
    CHECK(fields[0] == "rpm");
    CHECK(fields[7] == "4");
    CHECK(fields[9] == "5000");
    CHECK(fields[10] == "surrogate");
    CHECK(fields[11].find("e-") != std::string::npos);
    // ber bound = 2 * ped ~ 1.5 here: reported but flagged vacuous.
    CHECK(fields[17].substr(0, 1) == "1");
    CHECK(fields[18] == "1");
}

TEST_CASE("three-branch rows have no bit-mapped bound") {
    PointRequest req;
    req.cfg.n = 4;
    req.cfg.n_r = 3;
    req.cfg.es = 1.0;
    const auto fields = split(csv_row(evaluate_point(req)), ',');
    REQUIRE(fields.size() == 19);
    CHECK(fields[17] == "");
    CHECK(fields[18] == "");
}

TEST_CASE("sweep iterates scheme, elements, branches, fading, impairment, snr") {
    const auto spec = parse(
        "schemes = ssk, rpm-2\n"
        "n = 4, 8\n"
        "nr = 2\n"
        "m = 1\n"
        "k = 0, 0.1\n"
        "snr_db = 0, 10\n");
    const auto csv = run_sweep(spec);
    const auto lines = split(csv, '\n');
    REQUIRE(lines.size() == 18);  // header + 16 rows + trailing newline
    CHECK(lines[0] == csv_header());
    CHECK(lines.back() == "");
    const auto first = split(lines[1], ',');
    const auto second = split(lines[2], ',');
    const auto third = split(lines[3], ',');
    CHECK(first[8] == "0");
    CHECK(second[8] == "10");  // snr is the innermost loop
    CHECK(third[6] == "0.1");  // then the impairment level
    CHECK(split(lines[5], ',')[1] == "8");   // then elements
    CHECK(split(lines[9], ',')[0] == "rpm");  // schemes are outermost
}

TEST_CASE("per-row seeds differ even for identical grid points") {
    const auto spec = parse(
        "schemes = ssk\n"
        "n = 4\n"
        "nr = 2\n"
        "k = 0.1, 0.1\n"
        "snr_db = 0\n"
        "trials = 20000\n"
        "mode = surrogate\n");
    const auto lines = split(run_sweep(spec), '\n');
    REQUIRE(lines.size() == 4);
    const auto row1 = split(lines[1], ',');
    const auto row2 = split(lines[2], ',');
    CHECK(row1[13] == row2[13]);  // same closed-form value
    CHECK(row1[11] != row2[11]);  // distinct Monte Carlo draws
}

TEST_CASE("sweep bytes do not depend on the worker count") {
    const auto spec = parse(
        "schemes = rpm-4\n"
        "n = 4\n"
        "nr = 2, 3\n"
        "snr_db = -5:0:5\n"
        "trials = 30000\n"
        "seed = 77\n");
    const auto a = run_sweep(spec, 1);
    const auto b = run_sweep(spec, 4);
    const auto c = run_sweep(spec, 16);
    CHECK(a == b);
    CHECK(a == c);
}
