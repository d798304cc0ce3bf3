#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "farey");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = farey::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(CliGenerate, GoldenRowsMatchTable) {
    const auto& rows = farey::oracle::table_rows();
    for (unsigned k = 0; k < rows.size(); ++k) {
        const Result r = run({"generate", "-k", std::to_string(k)});
        ASSERT_EQ(r.code, 0);
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line);
        EXPECT_EQ(line, "index,numerator,denominator,value");
        for (std::size_t s = 0; s < rows[k].size(); ++s) {
            ASSERT_TRUE(std::getline(in, line));
            const auto [p, q] = rows[k][s];
            const std::string prefix =
                std::to_string(s) + "," + std::to_string(p) + "," + std::to_string(q) + ",";
            EXPECT_EQ(line.rfind(prefix, 0), 0U) << line;
            EXPECT_NEAR(std::stod(line.substr(prefix.size())), double(p) / q, 1e-15);
        }
        EXPECT_FALSE(std::getline(in, line));
    }
}

TEST(CliGenerate, LevelFourSeventhEntry) {
    const Result r = run({"generate", "-k", "4", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc.size(), 17U);
    EXPECT_EQ(doc[7]["numerator"], 3);
    EXPECT_EQ(doc[7]["denominator"], 7);
    EXPECT_EQ(doc[16]["value"], "1");
}

TEST(CliGenerate, LevelCap) {
    EXPECT_EQ(run({"generate", "-k", "30"}).code, 2);
    EXPECT_EQ(run({"generate", "-k", "4", "--max-level", "3"}).code, 2);
}

TEST(CliSpectrum, ExactStrings) {
    const Result r = run({"spectrum", "-k", "2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "tau_index,tau_bits,j_value\n0,00,-3/8\n1,01,1/8\n2,10,5/24\n3,11,1/24\n");
}

TEST(CliSpectrum, FloatJsonMatchesExact) {
    const Result r = run({"spectrum", "-k", "6", "--mode", "float", "--format", "json", "--bounds"});
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["mode"], "float");
    EXPECT_EQ(doc["level"], 6);
    const auto exact = farey::interaction_exact(6);
    ASSERT_EQ(doc["values"].size(), 64U);
    for (std::uint64_t tau = 0; tau < 64; ++tau) {
        const auto& row = doc["values"][tau];
        EXPECT_NEAR(row["j_value"].get<double>(), farey::to_double(exact[tau]), 1e-15);
        EXPECT_EQ(row.contains("decay_bound"), tau != 0);
    }
}

TEST(CliSpectrum, ExactAboveThresholdIsUsageError) {
    const Result r = run({"spectrum", "-k", "13", "--mode", "exact"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("exact"), std::string::npos);
    EXPECT_EQ(run({"spectrum", "-k", "14"}).code, 0);
}

TEST(CliVerify, PassesAndReportsSchema) {
    const Result r = run({"verify", "-k", "6", "--trials", "100"});
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    ASSERT_TRUE(doc.is_array());
    for (const auto& rep : doc) {
        EXPECT_TRUE(rep["pass"].get<bool>());
        for (const char* key : {"name", "level", "mode", "pass", "margin", "witness"}) {
            EXPECT_TRUE(rep.contains(key)) << key;
        }
    }
}

TEST(CliVerify, InjectedFaultFailsWithWitness) {
    const Result r = run({"verify", "-k", "4", "--inject-fault", "3", "--trials", "10"});
    EXPECT_EQ(r.code, 1);
    const auto doc = nlohmann::json::parse(r.out);
    bool found = false;
    for (const auto& rep : doc) {
        if (!rep["pass"].get<bool>()) {
            EXPECT_FALSE(rep["witness"].is_null());
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(CliVerify, BadLevelRange) {
    EXPECT_EQ(run({"verify", "-k", "3", "--min-level", "5"}).code, 2);
    EXPECT_EQ(run({"verify", "-k", "14", "--mode", "exact"}).code, 2);
}

TEST(CliPartition, InverseZetaWithinTail) {
    const Result r = run({"partition", "-k", "20", "--s-re", "3", "--t", "1"});
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    for (const char* key : {"k", "s_re", "s_im", "t", "z_re", "z_im", "tail_bound", "reference_value",
                            "discrepancy"}) {
        EXPECT_TRUE(doc.contains(key)) << key;
    }
    EXPECT_NEAR(doc["reference_value"]["re"].get<double>(), 0.831907372581, 1e-11);
    EXPECT_LE(doc["discrepancy"].get<double>(), doc["tail_bound"].get<double>() + 1e-10);
}

TEST(CliPartition, InteriorPhaseHasNoReference) {
    const Result r = run({"partition", "-k", "8", "--s-re", "3", "--s-im", "1", "--t", "0.5"});
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_TRUE(doc["reference_value"].is_null());
    EXPECT_TRUE(doc["discrepancy"].is_null());
}

TEST(CliPartition, DomainErrors) {
    EXPECT_EQ(run({"partition", "-k", "5", "--s-re", "2.0", "--t", "0"}).code, 2);
    EXPECT_EQ(run({"partition", "-k", "5", "--s-re", "3", "--t", "1.5"}).code, 2);
    EXPECT_EQ(run({"partition", "-k", "5", "--t", "0"}).code, 2);
}

TEST(CliUsage, UnknownFlagsAndHelp) {
    EXPECT_EQ(run({"generate", "-k", "2", "--bogus"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}
