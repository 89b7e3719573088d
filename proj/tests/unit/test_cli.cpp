#include <jcr/cli/app.hpp>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace {

struct Invocation {
    int code = -1;
    std::string out, err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "jcr-sim");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Invocation r;
    r.code = jcr::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::vector<std::string> column(const std::string& name) const {
        const auto k = std::find(columns.begin(), columns.end(), name) - columns.begin();
        std::vector<std::string> v;
        for (const auto& r : rows) v.push_back(r.at(k));
        return v;
    }
};

struct CsvDoc {
    std::vector<std::string> header;
    std::map<std::string, CsvTable> tables;
};

CsvDoc parse_csv(const std::string& text) {
    CsvDoc doc;
    std::istringstream in(text);
    std::string line;
    CsvTable* current = nullptr;
    bool want_columns = false;
    while (std::getline(in, line)) {
        if (line.rfind("# table: ", 0) == 0) {
            current = &doc.tables[line.substr(9)];
            want_columns = true;
        } else if (line.rfind("# ", 0) == 0) {
            doc.header.push_back(line.substr(2));
        } else if (want_columns) {
            current->columns = split(line);
            want_columns = false;
        } else {
            current->rows.push_back(split(line));
        }
    }
    return doc;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("jcr_cli_test_" + name)).string();
}

}  // namespace

TEST(Cli, SteadyAtExactCriticalCouplingHasOnlyBoundaryRows) {
    const auto r = invoke({"steady", "--lambda", "1", "--eta", "0", "--kappa", "0", "--delta", "1", "--delta0", "1",
                           "--epsilon", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = parse_csv(r.out);
    std::set<double> zetas;
    for (const auto& z : doc.tables.at("branches").column("zeta")) zetas.insert(std::stod(z));
    EXPECT_EQ(zetas, (std::set<double>{-1.0, 1.0}));
    EXPECT_FALSE(doc.tables.at("notes").rows.empty());
}

TEST(Cli, QuasienergiesCollapseAtCriticalDrive) {
    const auto r = invoke({"quasi", "--lambda", "1", "--eta", "0", "--epsilon", "0.5", "--nmax", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto e = parse_csv(r.out).tables.at("levels").column("energy");
    EXPECT_EQ(e.size(), 11u);
    for (const auto& v : e) EXPECT_EQ(std::stod(v), 0.0);
}

TEST(Cli, QuasiVerificationColumnsFilledBelowCriticalDrive) {
    const auto r = invoke({"quasi", "--lambda", "1", "--eta", "0.3", "--epsilon", "0.26", "--nmax", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const auto& v : parse_csv(r.out).tables.at("levels").column("residual")) EXPECT_LT(std::stod(v), 1e-6);
}

TEST(Cli, MalformedFlagExitsOneWithoutOutput) {
    for (const auto& args : std::vector<std::vector<std::string>>{{"steady", "--lambda"},
                                                                  {"steady", "--lambda", "abc"},
                                                                  {"steady", "--no-such-flag", "1"},
                                                                  {"nonsense"},
                                                                  {}}) {
        const auto r = invoke(args);
        EXPECT_EQ(r.code, 1);
        EXPECT_TRUE(r.out.empty());
        EXPECT_FALSE(r.err.empty());
    }
}

TEST(Cli, OutOfDomainConfigExitsOne) {
    const std::string path = temp_path("bad.csv");
    std::remove(path.c_str());
    for (const auto& args : std::vector<std::vector<std::string>>{{"steady", "--eta", "1.5"},
                                                                  {"critical", "--kappa", "-1"},
                                                                  {"spectrum", "--kappa", "0.1"},
                                                                  {"traj", "--ntraj", "0"},
                                                                  {"steady", "--format", "xml"}}) {
        auto with_out = args;
        with_out.insert(with_out.end(), {"--output", path});
        const auto r = invoke(with_out);
        EXPECT_EQ(r.code, 1);
        EXPECT_TRUE(r.out.empty());
        EXPECT_FALSE(std::filesystem::exists(path));
    }
}

TEST(Cli, NumericalFailureExitsTwoWithDiagnostics) {
    const std::string path = temp_path("fail.csv");
    std::remove(path.c_str());
    std::remove((path + ".diag").c_str());
    const auto r = invoke({"qfunc", "--kappa", "0.5", "--epsilon", "0.2", "--nfock", "10", "--tol", "1e-30", "--output",
                           path});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(std::filesystem::exists(path));
    std::ifstream diag(path + ".diag");
    ASSERT_TRUE(diag.good());
    std::string first;
    std::getline(diag, first);
    EXPECT_EQ(first, "# jcr-sim qfunc format_version=1");
}

TEST(Cli, HeaderEmbedsFullConfig) {
    const auto r = invoke({"critical", "--eta", "0.6", "--kappa", "0.1", "--delta", "1", "--delta0", "1"});
    ASSERT_EQ(r.code, 0);
    const auto doc = parse_csv(r.out);
    EXPECT_EQ(doc.header.front(), "jcr-sim critical format_version=1");
    jcr::cli::RunConfig defaults;
    EXPECT_EQ(doc.header.size(), defaults.echo().size());
}

TEST(Cli, ConfigEchoReproducesRun) {
    const std::vector<std::string> args{"sweep",        "--eta",        "0.6", "--kappa",      "0.1",
                                        "--epsilon",    "0.2",          "--scaled", "--grid-start", "-1",
                                        "--grid-end",   "1",            "--grid-count", "21"};
    const auto first = invoke(args);
    ASSERT_EQ(first.code, 0) << first.err;
    const std::string cfg = temp_path("echo.cfg");
    {
        std::ofstream f(cfg);
        const auto doc = parse_csv(first.out);
        for (std::size_t k = 1; k < doc.header.size(); ++k) f << doc.header[k] << "\n";
    }
    const auto again = invoke({"sweep", "--config", cfg});
    ASSERT_EQ(again.code, 0) << again.err;
    EXPECT_EQ(again.out, first.out);

    const auto overridden = invoke({"sweep", "--config", cfg, "--grid-count", "5"});
    ASSERT_EQ(overridden.code, 0);
    EXPECT_EQ(parse_csv(overridden.out).tables.at("curves").column("delta").size() <
                  parse_csv(first.out).tables.at("curves").column("delta").size(),
              true);
}

TEST(Cli, DeterministicAcrossRunsAndThreads) {
    const std::vector<std::string> base{"phase-diagram", "--eta",    "0.6",      "--kappa",   "0.1",  "--grid-start",
                                        "-1",            "--grid-end", "1",      "--grid-count", "9", "--y-start",
                                        "0",             "--y-end",  "1.5",      "--y-count", "7"};
    auto one = base, four = base;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    const auto a = invoke(one), b = invoke(one), c = invoke(four);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto strip = [](const std::string& s) { return s.substr(s.find("# table:")); };
    EXPECT_EQ(strip(a.out), strip(c.out));
    EXPECT_EQ(parse_csv(a.out).tables.at("regions").rows.size(), 63u);
}

TEST(Cli, JsonMirrorsCsv) {
    const std::vector<std::string> args{"traj", "--kappa", "0.5", "--epsilon", "0.3", "--nfock", "8", "--ntraj", "2",
                                        "--duration", "3", "--points", "11", "--seed", "7"};
    auto as_json = args;
    as_json.insert(as_json.end(), {"--format", "json"});
    const auto c = invoke(args), j = invoke(as_json);
    ASSERT_EQ(c.code, 0) << c.err;
    ASSERT_EQ(j.code, 0) << j.err;
    const auto csv = parse_csv(c.out);
    const auto doc = nlohmann::json::parse(j.out);
    EXPECT_EQ(doc["format_version"], 1);
    EXPECT_EQ(doc["subcommand"], "traj");
    EXPECT_EQ(doc["config"]["seed"], "7");
    ASSERT_EQ(doc["tables"].size(), csv.tables.size());
    for (const auto& [name, table] : csv.tables) {
        const auto& jt = doc["tables"][name];
        EXPECT_EQ(jt["columns"].get<std::vector<std::string>>(), table.columns);
        ASSERT_EQ(jt["rows"].size(), table.rows.size()) << name;
        for (std::size_t r = 0; r < table.rows.size(); ++r)
            for (std::size_t k = 0; k < table.columns.size(); ++k) {
                const auto& cell = jt["rows"][r][k];
                const std::string& text = table.rows[r][k];
                if (cell.is_null()) EXPECT_TRUE(text.empty());
                else if (cell.is_string()) EXPECT_EQ(cell.get<std::string>(), text);
                else if (cell.is_boolean()) EXPECT_EQ(cell.get<bool>() ? "true" : "false", text);
                else EXPECT_EQ(cell.get<double>(), std::stod(text)) << name << " " << r << " " << k;
            }
    }
}

TEST(Cli, ScaledUnitsMatchRawUnits) {
    // eps_crit = 0.8 at eta = 0.6, so eps_bar 0.25 is epsilon 0.2 and delta_bar 0.5 is delta 0.8
    const auto s = invoke({"steady", "--eta", "0.6", "--kappa", "0.1", "--epsilon", "0.25", "--delta", "0.5", "--delta0",
                           "0.5", "--scaled"});
    const auto r = invoke({"steady", "--eta", "0.6", "--kappa", "0.16", "--epsilon", "0.2", "--delta", "0.8",
                           "--delta0", "0.8"});
    ASSERT_EQ(s.code, 0);
    ASSERT_EQ(r.code, 0);
    const auto zs = parse_csv(s.out).tables.at("branches").column("zeta");
    const auto zr = parse_csv(r.out).tables.at("branches").column("zeta");
    ASSERT_EQ(zs.size(), zr.size());
    for (std::size_t k = 0; k < zs.size(); ++k) EXPECT_NEAR(std::stod(zs[k]), std::stod(zr[k]), 1e-12);
}

TEST(Cli, OutputFileMatchesStdout) {
    const std::string path = temp_path("out.csv");
    const auto a = invoke({"critical", "--grid-start", "0.01", "--grid-end", "0.9", "--grid-count", "5", "--kappa",
                           "0.1", "--delta", "1", "--delta0", "1"});
    const auto b = invoke({"critical", "--grid-start", "0.01", "--grid-end", "0.9", "--grid-count", "5", "--kappa",
                           "0.1", "--delta", "1", "--delta0", "1", "-o", path});
    ASSERT_EQ(b.code, 0);
    EXPECT_TRUE(b.out.empty());
    std::ifstream f(path);
    const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    EXPECT_EQ(text, a.out);
    const auto lower = parse_csv(a.out).tables.at("critical").column("lambda_lower");
    EXPECT_TRUE(lower.front().empty());
    EXPECT_FALSE(lower.back().empty());
}

TEST(Cli, TrajectoryTruncationIsFlagged) {
    auto flag = [](const std::string& n_fock) {
        const auto r = invoke({"traj", "--kappa", "0.5", "--epsilon", "1.5", "--nfock", n_fock, "--duration", "5",
                               "--points", "11"});
        EXPECT_EQ(r.code, 0);
        return parse_csv(r.out).tables.at("truncation").column("truncation_warning").at(0);
    };
    EXPECT_EQ(flag("6"), "true");
    EXPECT_EQ(flag("60"), "false");
}

TEST(Cli, SpectrumAndQfuncTables) {
    const auto s = invoke({"spectrum", "--kappa", "0.5", "--epsilon", "0.1", "--grid-start", "-1", "--grid-end", "1",
                           "--grid-count", "3", "--nfock", "10"});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_EQ(parse_csv(s.out).tables.at("spectrum").rows.size(), 3u);
    const auto q = invoke({"qfunc", "--kappa", "0.5", "--epsilon", "0.3", "--nfock", "12", "--qpoints", "41"});
    ASSERT_EQ(q.code, 0) << q.err;
    const auto doc = parse_csv(q.out);
    EXPECT_EQ(doc.tables.at("q").rows.size(), 41u * 41u);
    EXPECT_NEAR(std::stod(doc.tables.at("summary").column("normalization").front()), 1.0, 1e-2);
    EXPECT_FALSE(doc.tables.at("peaks").rows.empty());
}
