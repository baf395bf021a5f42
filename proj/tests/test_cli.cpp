#include "../tools/cli.hpp"

#include <spectratope/spectratope.hpp>

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace spectratope;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    io::Json json() const { return io::Json::parse(out); }
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "")
{
    std::istringstream in(stdin_text);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents)
{
    const auto path = std::filesystem::temp_directory_path() / ("spectratope_test_" + name);
    std::ofstream(path) << contents;
    return path;
}

} // namespace

TEST_CASE("walsh renders +/- rows")
{
    const Run r = run({"walsh", "--n", "2", "--format", "pm"});
    CHECK(r.code == 0);
    CHECK(r.out == "++++\n+-+-\n++--\n+--+\n");
    CHECK(io::matrix_from_json(run({"walsh", "--n", "3"}).json()) == walsh(3).matrix);
}

TEST_CASE("realize a Suleimanova spectrum")
{
    const Run r = run({"realize", "--spectrum", "1,-1/4,-1/4,-1/2"});
    CHECK(r.code == 0);
    const io::Json j = r.json();
    CHECK(j["method"] == "suleimanova");
    CHECK(j["flags"]["doubly_stochastic"] == true);
}

TEST_CASE("membership in the Walsh cone")
{
    const Run r = run({"membership", "--walsh", "2", "--vector", "1,1,1,-1"});
    CHECK(r.code == 1);
    const io::Json j = r.json();
    CHECK(j["member"] == false);
    CHECK(j["coefficients"] == io::Json::array({"1/2", "1/2", "1/2", "-1/2"}));
    CHECK(run({"membership", "--walsh", "2", "--vector", "4,0,0,0"}).code == 0);
}

TEST_CASE("usage errors exit 2 and name the flag")
{
    const Run none = run({});
    CHECK(none.code == 2);

    const Run bad_vector = run({"membership", "--walsh", "2", "--vector", "1,x"});
    CHECK(bad_vector.code == 2);
    CHECK(bad_vector.err.find("--vector") != std::string::npos);

    const Run wrong_size = run({"membership", "--walsh", "2", "--vector", "1,2,3"});
    CHECK(wrong_size.code == 2);
    CHECK(wrong_size.err.find("--vector") != std::string::npos);

    const Run missing = run({"classify", "--matrix", "/nonexistent/s.json"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("/nonexistent/s.json") != std::string::npos);

    const Run singular = run({"classify", "--matrix", "-"}, "[[1,2],[2,4]]");
    CHECK(singular.code == 2);
    CHECK(singular.err.find("--matrix") != std::string::npos);

    const Run hadamard = run({"hadamard", "--order", "20"});
    CHECK(hadamard.code == 2);
    CHECK(hadamard.err.find("--order") != std::string::npos);

    CHECK(run({"hadamard", "--order", "4", "--next", "5"}).code == 2);
    CHECK(run({"walsh", "--n", "2", "--format", "xml"}).code == 2);
    CHECK(run({"scheme", "--n", "2", "--k", "0"}).err.find("--k") != std::string::npos);
    CHECK(run({"realize", "--spectrum", ""}).code == 2);
    CHECK(run({"realize", "--spectrum", "1,-1", "--method", "n7"}).err.find("--method") != std::string::npos);
    CHECK(run({"vertices", "--figure", "fig9"}).err.find("--figure") != std::string::npos);
    CHECK(run({"volume"}).code == 2);
}

TEST_CASE("negative answers exit 1 with a JSON body")
{
    const Run trace = run({"realize", "--spectrum", "1,-1/2,-1/2,-1/2"});
    CHECK(trace.code == 1);
    CHECK(trace.json()["realizable"] == false);
    CHECK(trace.json()["reason"] == "ConditionsFail");
    CHECK(trace.json()["conditions"]["violations"][0]["witness"]["k"] == 1);

    const Run unsupported = run({"realize", "--spectrum", "1,1/2,-1/4,-1/4,-1/2"});
    CHECK(unsupported.code == 1);
    CHECK(unsupported.json()["reason"] == "NotSupported");

    const Run classify = run({"classify", "--matrix", "-"}, "[[1,\"1/2\"],[1,1]]");
    CHECK(classify.code == 1);
    CHECK(classify.json()["perron_similarity"] == false);
}

TEST_CASE("classify reports 1-based indices")
{
    const Run r = run({"classify", "--matrix", "-"}, "1 1\n1 -1\n");
    CHECK(r.code == 0);
    const io::Json j = r.json();
    CHECK(j["perron_indices"] == io::Json::array({1}));
    CHECK(j["strong_index"] == 1);
    CHECK(j["doubly_stochastic_index"]["beta"] == "1/2");
}

TEST_CASE("identical arguments give identical output")
{
    const std::vector<std::vector<std::string>> commands{
        {"realize", "--spectrum", "5,-1,-1,-1,-1"},
        {"vertices", "--walsh", "2", "--set", "P1"},
        {"vertices", "--figure", "fig2", "--a", "1/3"},
        {"hadamard", "--order", "24"},
        {"scheme", "--n", "3", "--k", "6"},
    };
    for (const auto& args : commands) {
        const Run first = run(args);
        CHECK(first.code == 0);
        CHECK(run(args).out == first.out);
    }
}

TEST_CASE("realize then verify round-trips")
{
    for (const std::string spectrum : {"1,-1/4,-1/4,-1/2", "2,-1,-1", "1,-1/3,-1/3", "6,1,-3,-2", "5,-1,-1,-1,-1"}) {
        const Run cert = run({"realize", "--spectrum", spectrum});
        REQUIRE(cert.code == 0);
        const Run check = run({"verify", "--certificate", "-"}, cert.out);
        CHECK(check.code == 0);
        CHECK(check.json()["passed"] == true);
        // The certificate survives reading back unchanged.
        CHECK(io::pretty(io::to_json(io::certificate_from_json(cert.json()))) + "" ==
              io::pretty([&] {
                  io::Json j = cert.json();
                  j.erase("spectrum");
                  return j;
              }()));
    }
    const Run cert = run({"realize", "--spectrum", "1,-1/3,-1/3", "--method", "n3-symmetric"});
    CHECK(cert.json()["numeric"] == true);
    const auto path = temp_file("cert.json", cert.out);
    CHECK(run({"verify", "--certificate", path.string()}).code == 0);
    const Run wrong = run({"verify", "--certificate", path.string(), "--spectrum", "1,0,-1"});
    CHECK(wrong.code == 1);
    CHECK(wrong.json()["failures"][0]["check"] == "char_poly");
    std::filesystem::remove(path);
}

TEST_CASE("verify reports tampered entries with 1-based indices")
{
    io::Json j = run({"realize", "--spectrum", "1,-1/4,-1/4,-1/2"}).json();
    j["realizer"][1][2] = "-1/100";
    const Run r = run({"verify", "--certificate", "-"}, j.dump());
    CHECK(r.code == 1);
    bool found = false;
    const io::Json report = r.json();
    for (const auto& f : report["failures"]) {
        if (f["check"] == "nonnegative") {
            found = true;
            CHECK(f["index"] == io::Json::array({2, 3}));
        }
    }
    CHECK(found);
    CHECK(run({"verify", "--certificate", "-"}, "{not json").code == 2);
}

TEST_CASE("H-representations feed back into membership and vertices")
{
    const Run cone = run({"cone", "--matrix", "-"}, "[[1,1],[1,-1]]");
    REQUIRE(cone.code == 0);
    CHECK(run({"membership", "--hrep", "-", "--vector", "1,1/2"}, cone.out).code == 0);
    CHECK(run({"membership", "--hrep", "-", "--vector", "1,2"}, cone.out).code == 1);
    CHECK(io::hrep_from_json(cone.json()) == spectracone_hrep(walsh(1).matrix));

    const Run p1 = run({"project", "--matrix", "-"}, "[[1,1,1,1],[1,-1,1,-1],[1,1,-1,-1],[1,-1,-1,1]]");
    REQUIRE(p1.code == 0);
    const Run vertices = run({"vertices", "--hrep", "-"}, p1.out);
    CHECK(vertices.code == 0);
    CHECK(vertices.json().size() == 4);

    const Run tope = run({"tope", "--matrix", "-", "--set", "W", "--format", "csv"}, "[[1,1],[1,-1]]");
    CHECK(tope.out.starts_with("a1,a2,b,tag\n"));
    CHECK(run({"tope", "--matrix", "-", "--set", "P1"}, "[[1,1],[1,-1]]").code == 2);
}

TEST_CASE("emitted matrices are accepted as inputs")
{
    const Run h = run({"walsh", "--n", "2"});
    CHECK(run({"classify", "--matrix", "-"}, h.out).code == 0);
    const Run pm = run({"hadamard", "--order", "12", "--format", "pm"});
    const auto path = temp_file("h12.txt", pm.out);
    const Run normalized = run({"hadamard", "--matrix", path.string(), "--format", "pm"});
    CHECK(normalized.code == 0);
    CHECK(normalized.out == pm.out);
    std::filesystem::remove(path);
}

TEST_CASE("volumes")
{
    CHECK(run({"volume", "--walsh", "3", "--set", "W"}).json()["volume"] == "32/315");
    CHECK(run({"volume", "--walsh", "2", "--set", "P1"}).json()["volume"] == "8/3");
    const Run r = run({"volume", "--matrix", "-", "--decimal", "4"}, "0 0\n1 0\n0 1\n");
    CHECK(r.json()["volume"] == "1/2");
    CHECK(r.json()["decimal"] == "0.5000");
    CHECK(run({"volume", "--matrix", "-"}, "0 0\n1 1\n2 2\n").code == 2);
}

TEST_CASE("figure data")
{
    const Run fig3 = run({"vertices", "--figure", "fig3"});
    CHECK(fig3.code == 0);
    for (const std::string v : {"1,1,1", "-1,1,-1", "1,-1,-1", "-1,-1,1"}) {
        CHECK(fig3.out.find("P1(H2),vertex," + v + "\n") != std::string::npos);
    }
    const Run fig1 = run({"vertices", "--figure", "fig1"});
    CHECK(fig1.out.starts_with("region,kind,values\n"));
    CHECK(fig1.out.find("W(H1),vertex,0,0\n") != std::string::npos);
    CHECK(fig1.out.find("P1(H1),vertex,-1\n") != std::string::npos);

    const Run fig2 = run({"vertices", "--figure", "fig2", "--a", "1/3"});
    CHECK(fig2.out.find(",vertex,-1/3,2/3\n") != std::string::npos);
    CHECK(fig2.out.find(",vertex,-1/3,-2/3\n") != std::string::npos);
    CHECK(run({"vertices", "--figure", "fig2", "--a", "2"}).code == 2);

    const auto path = std::filesystem::temp_directory_path() / "spectratope_test_fig3.csv";
    const Run to_file = run({"vertices", "--figure", "fig3", "--out", path.string()});
    CHECK(to_file.code == 0);
    CHECK(to_file.out.empty());
    std::ifstream file(path);
    const std::string contents{std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
    CHECK(contents == fig3.out);
    std::filesystem::remove(path);
    CHECK(run({"vertices", "--figure", "fig3", "--out", "/nonexistent/dir/x.csv"}).code == 2);
}

TEST_CASE("scheme permutations")
{
    const io::Json j = run({"scheme", "--n", "2", "--k", "2"}).json();
    CHECK(j["image"] == io::Json::array({2, 1, 4, 3}));
    CHECK(run({"scheme", "--n", "3", "--k", "4", "--l", "6"}).json()["product"] == 7);
    CHECK(run({"scheme", "--n", "2", "--k", "5"}).code == 2);
}

TEST_CASE("decimal rendering is for reading only")
{
    const Run r = run({"realize", "--spectrum", "1,-1/3", "--decimal", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0.333") != std::string::npos);
    CHECK(r.out.find('/') == std::string::npos);
}
