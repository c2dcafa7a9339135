#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "ueqc/cache.hpp"

using namespace ueqc;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("ueqc_test_" + name + ".json");
  std::filesystem::remove(p);
  return p;
}

std::shared_ptr<const BooleanFunction> fn(const std::string& spec) {
  return std::make_shared<const BooleanFunction>(make_function(spec));
}

}  // namespace

TEST(Cache, RoundTripThroughDisk) {
  const auto path = temp_file("roundtrip");
  BiasResult first;
  {
    BiasCache c(path);
    first = c.max_bias(fn("OMB:3"), 2, Norm::L1);
    EXPECT_EQ(c.size(), 1u);
    EXPECT_EQ(c.hits(), 0u);
    c.save();
  }
  BiasCache again(path);
  EXPECT_EQ(again.size(), 1u);
  const auto second = again.max_bias(fn("OMB:3"), 2, Norm::L1);
  EXPECT_EQ(again.hits(), 1u);
  EXPECT_EQ(second.beta, first.beta);
  ASSERT_TRUE(second.witness.has_value());
  EXPECT_EQ(second.witness->poly, first.witness->poly);
  std::filesystem::remove(path);
}

TEST(Cache, ReportMatchesUncached) {
  const auto path = temp_file("report");
  BiasCache c(path);
  const auto f = fn("TT:4:2");
  const auto cached = complexity_report(f, {}, c.oracle(f));
  const auto plain = complexity_report(f);
  EXPECT_EQ(cached.sdeg, plain.sdeg);
  EXPECT_EQ(cached.wuc_hi.beta, plain.wuc_hi.beta);
  EXPECT_EQ(cached.wuq_lo.beta, plain.wuq_lo.beta);
  const auto warm = complexity_report(f, {}, c.oracle(f));
  EXPECT_GT(c.hits(), 0u);
  EXPECT_EQ(warm.wuc_lo.beta, plain.wuc_lo.beta);
}

TEST(Cache, TamperedEntryIsRecomputed) {
  const auto path = temp_file("tamper");
  {
    BiasCache c(path);
    c.max_bias(fn("OR:3"), 1, Norm::Sup);
    c.save();
  }
  nlohmann::json doc;
  {
    std::ifstream in(path);
    doc = nlohmann::json::parse(in);
  }
  for (auto& [key, entry] : doc["entries"].items()) entry["beta"] = "1/2";
  {
    std::ofstream out(path);
    out << doc.dump();
  }
  BiasCache c(path);
  const auto r = c.max_bias(fn("OR:3"), 1, Norm::Sup);
  EXPECT_EQ(c.hits(), 0u);
  EXPECT_EQ(r.beta, max_bias(make_function("OR:3"), 1, Norm::Sup).beta);
  std::filesystem::remove(path);
}

TEST(Cache, OtherVersionIgnoredAndGarbageTolerated) {
  const auto path = temp_file("version");
  {
    std::ofstream out(path);
    out << R"({"version": "ueqc 0.0.1", "entries": {"x": {}}})";
  }
  EXPECT_EQ(BiasCache(path).size(), 0u);
  {
    std::ofstream out(path);
    out << "not json";
  }
  EXPECT_EQ(BiasCache(path).size(), 0u);
  std::filesystem::remove(path);
}

TEST(Cache, ConcurrentUse) {
  const auto path = temp_file("threads");
  BiasCache c(path);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (int d = 0; d <= 3; ++d) c.max_bias(fn("MAJ:" + std::to_string(3 + t)), d, Norm::L1);
    });
  }
  for (auto& th : pool) th.join();
  EXPECT_EQ(c.size(), 16u);
  c.save();
  EXPECT_EQ(BiasCache(path).size(), 16u);
  std::filesystem::remove(path);
}

TEST(Cache, FlagBeatsEnvironment) {
  ::setenv("UEQC_CACHE", "/tmp/from_env.json", 1);
  EXPECT_EQ(BiasCache::resolve_path("/tmp/from_flag.json")->string(), "/tmp/from_flag.json");
  EXPECT_EQ(BiasCache::resolve_path("")->string(), "/tmp/from_env.json");
  ::unsetenv("UEQC_CACHE");
  EXPECT_FALSE(BiasCache::resolve_path("").has_value());
}
