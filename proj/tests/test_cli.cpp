#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCli = FRTM_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

struct Csv {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv out;
    std::istringstream is(text);
    std::string line;
    bool header_done = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!header_done) {
            out.columns = cells;
            header_done = true;
        } else {
            out.rows.push_back(cells);
        }
    }
    return out;
}

fs::path tmp_file(const std::string& name) {
    return fs::temp_directory_path() / name;
}

} // namespace

TEST_CASE("norms table") {
    const auto out = tmp_file("frtm_norms.csv");
    fs::remove(out);
    REQUIRE(run("norms --grid-L 20 --grid-n 4096 --out " + out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("# tool_version=") != std::string::npos);
    CHECK(text.find("grid_L=20") != std::string::npos);

    const Csv csv = parse_csv(text);
    REQUIRE(csv.columns.size() == 6);
    CHECK(csv.columns[5] == "relative_gap");
    bool saw_gauss = false, saw_zero = false;
    for (const auto& row : csv.rows) {
        if (row[0] == "gaussian-1") {
            saw_gauss = true;
            CHECK(std::abs(std::stod(row[5])) <= 1e-2);
        }
        if (row[0] == "zero") {
            saw_zero = true;
            for (std::size_t c = 1; c < row.size(); ++c)
                CHECK(std::stod(row[c]) == 0.0);
        }
    }
    CHECK(saw_gauss);
    CHECK(saw_zero);
}

TEST_CASE("config errors exit 2 without output") {
    const auto out = tmp_file("frtm_should_not_exist.csv");
    fs::remove(out);
    CHECK(run("norms --grid-n 3 --out " + out.string()) == 2);
    CHECK_FALSE(fs::exists(out));
    CHECK(run("norms --format xml") == 2);
    CHECK(run("moser-scan --eps 1.5") == 2);
    CHECK(run("maximize --alpha -1") == 2);

    const auto cfg = tmp_file("frtm_bad.json");
    std::ofstream(cfg) << "{ not json";
    CHECK(run("norms --config " + cfg.string() + " --out " + out.string()) == 2);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("config file with flag overrides") {
    const auto cfg = tmp_file("frtm_cfg.json");
    const auto out = tmp_file("frtm_gn_cfg.csv");
    std::ofstream(cfg) << R"({"grid": {"L": 20, "n": 1024}, "q": [2, 40]})";
    REQUIRE(run("gn --config " + cfg.string() + " --grid-n 2048 --out " + out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("grid_n=2048") != std::string::npos); // flag wins
    CHECK(text.find("# q=2 40") != std::string::npos);    // config fills the rest
}

TEST_CASE("gn table reproduces the analytic ratio") {
    const auto out = tmp_file("frtm_gn.csv");
    REQUIRE(run("gn --grid-L 20 --grid-n 4096 --q 2 --q 40 --out " + out.string()) == 0);
    const Csv csv = parse_csv(slurp(out));
    bool saw = false;
    for (const auto& row : csv.rows) {
        if (row[0] == "gaussian-half" && row[1] == "40") {
            saw = true;
            CHECK(std::stod(row[2]) == Catch::Approx(0.1525).margin(1e-3));
            CHECK(std::stod(row[3]) == Catch::Approx(0.24197).margin(1e-4));
        }
    }
    CHECK(saw);
}

TEST_CASE("moser scan and blowup") {
    const auto out = tmp_file("frtm_moser.csv");
    REQUIRE(run("moser-scan --grid-L 2 --grid-n 65536 --eps 0.01 --eps 0.001 --out " +
                out.string()) == 0);
    Csv csv = parse_csv(slurp(out));
    REQUIRE(csv.rows.size() == 2);
    // L2 exact vs numeric per row
    for (const auto& row : csv.rows)
        CHECK(std::stod(row[3]) == Catch::Approx(std::stod(row[2])).epsilon(1e-3));

    // empty eps list: empty table, exit zero
    const auto empty_out = tmp_file("frtm_moser_empty.csv");
    REQUIRE(run("moser-scan --grid-L 2 --grid-n 65536 --out " + empty_out.string()) == 0);
    CHECK(parse_csv(slurp(empty_out)).rows.empty());

    // under-resolved row is marked and the run exits 3
    const auto bad_out = tmp_file("frtm_moser_bad.csv");
    CHECK(run("moser-scan --grid-L 2 --grid-n 64 --eps 0.001 --out " + bad_out.string()) == 3);
    CHECK(slurp(bad_out).find("resolution") != std::string::npos);

    const auto blow_out = tmp_file("frtm_blowup.csv");
    REQUIRE(run("blowup --grid-L 2 --grid-n 65536 --eps 0.01 --eps 0.001 --out " +
                blow_out.string()) == 0);
    csv = parse_csv(slurp(blow_out));
    REQUIRE(csv.rows.size() == 2);
    CHECK(std::stod(csv.rows[1][5]) > std::stod(csv.rows[0][5]));
}

TEST_CASE("orbit table gaps") {
    const auto out = tmp_file("frtm_orbit.csv");
    REQUIRE(run("orbit --grid-L 20 --grid-n 4096 --alpha 0.05 --alpha 0.5 --out " +
                out.string()) == 0);
    const Csv csv = parse_csv(slurp(out));
    REQUIRE_FALSE(csv.rows.empty());
    for (const auto& row : csv.rows) {
        REQUIRE(row[5] == "ok");
        CHECK(std::stod(row[4]) <= 1e-4);
        if (row[1] == "0.05") CHECK(std::stod(row[2]) < 0.0);
    }
}

TEST_CASE("maximize and relation commands") {
    const auto out = tmp_file("frtm_max.csv");
    REQUIRE(run("maximize --grid-L 10 --grid-n 1024 --alpha 1.0 --out " + out.string()) == 0);
    Csv csv = parse_csv(slurp(out));
    REQUIRE(csv.rows.size() == 1);
    CHECK(std::stod(csv.rows[0][1]) > 1.0);           // best value above alpha
    CHECK(csv.rows[0][5] == "converged");

    const auto rel_out = tmp_file("frtm_rel.csv");
    REQUIRE(run("relation --grid-L 10 --grid-n 1024 --alpha 1.5707963267948966 --out " +
                rel_out.string()) == 0);
    csv = parse_csv(slurp(rel_out));
    REQUIRE(csv.rows.size() == 1);
    REQUIRE(csv.rows[0][5] == "ok");
    CHECK(std::abs(std::stod(csv.rows[0][3])) <= 1e-2); // identity residual
    CHECK(std::stod(csv.rows[0][4]) > 0.0);             // critical lower bound
}

TEST_CASE("json format mirrors the table") {
    const auto out = tmp_file("frtm_gn.json");
    REQUIRE(run("gn --grid-L 20 --grid-n 1024 --q 2 --format json --out " + out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"tool_version\"") != std::string::npos);
    CHECK(text.find("\"columns\"") != std::string::npos);
    CHECK(text.find("\"rows\"") != std::string::npos);
}

TEST_CASE("identical runs are byte-identical") {
    const auto a = tmp_file("frtm_det_a.csv");
    const auto b = tmp_file("frtm_det_b.csv");
    const std::string args = "norms --grid-L 20 --grid-n 2048 --out ";
    REQUIRE(run(args + a.string()) == 0);
    REQUIRE(run(args + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));

    const auto c = tmp_file("frtm_det_c.csv");
    const auto d = tmp_file("frtm_det_d.csv");
    const std::string gn_args = "gn --grid-L 20 --grid-n 2048 --q 2 --q 6 --q 40 --out ";
    REQUIRE(run(gn_args + c.string()) == 0);
    REQUIRE(run(gn_args + d.string()) == 0);
    CHECK(slurp(c) == slurp(d));
}
