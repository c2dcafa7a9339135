#include <gtest/gtest.h>

#include "ueqc/boolfn.hpp"

using namespace ueqc;

TEST(Bits, OneBasedMasksAndLexOrder) {
  const Mask x = parse_bits("100");
  EXPECT_TRUE(bit(x, 1));
  EXPECT_FALSE(bit(x, 3));
  EXPECT_EQ(bits_to_string(x, 3), "100");
  EXPECT_EQ(lex_index(x, 3), 4u);
  for (std::uint64_t i = 0; i < 16; ++i) EXPECT_EQ(lex_index(from_lex_index(i, 4), 4), i);
}

TEST(Spec, NamedFamiliesMatchDefinitions) {
  const auto par = make_function("PARITY:4");
  const auto orf = make_function("OR:4");
  const auto andf = make_function("AND:4");
  const auto maj = make_function("MAJ:5");
  for (Mask x = 0; x < 16; ++x) {
    EXPECT_EQ(par(x), weight(x) % 2);
    EXPECT_EQ(orf(x), x != 0 ? 1 : 0);
    EXPECT_EQ(andf(x), x == 15 ? 1 : 0);
  }
  for (Mask x = 0; x < 32; ++x) EXPECT_EQ(maj(x), weight(x) >= 3 ? 1 : 0);
}

TEST(Spec, ThresholdIsStrictlyAboveK) {
  const auto th = make_function("TH:6:2");
  for (Mask x = 0; x < 64; ++x) EXPECT_EQ(th(x), weight(x) > 2 ? 1 : 0);
}

TEST(Spec, OmbIsOddMaxBit) {
  const auto omb = make_function("OMB:3");
  EXPECT_EQ(omb.eval_string("000"), 0);
  EXPECT_EQ(omb.eval_string("100"), 1);
  EXPECT_EQ(omb.eval_string("110"), 0);
  EXPECT_EQ(omb.eval_string("111"), 1);
}

TEST(Spec, TruthTableEntryIsIntegerBit) {
  const auto f = make_function("TT:8:2");
  EXPECT_EQ(f.eval_string("11"), 1);
  EXPECT_EQ(f.eval_string("10"), 0);
  EXPECT_EQ(f.eval_string("01"), 0);
  EXPECT_EQ(f.eval_string("00"), 0);
  // entry i in lex order is bit i of the integer: 0x4 sets entry 2 = "10"
  const auto g = make_function("TT:4:2");
  EXPECT_EQ(g.eval_string("10"), 1);
  EXPECT_EQ(g.eval_string("01"), 0);
  const auto par = make_function("TT:96:3");
  for (Mask x = 0; x < 8; ++x) EXPECT_EQ(par(x), weight(x) % 2);
}

TEST(Spec, TruthTableRoundTrip) {
  for (std::uint64_t t = 0; t < 256; ++t) {
    const auto f = nth_function(3, t);
    const auto g = make_function(truth_table_spec(f));
    for (Mask x = 0; x < 8; ++x) EXPECT_EQ(f(x), g(x));
  }
}

TEST(Spec, RejectsMalformed) {
  EXPECT_THROW(make_function("FOO:3"), SpecError);
  EXPECT_THROW(make_function("OR:x"), SpecError);
  EXPECT_THROW(make_function("TT:8:3"), SpecError);
  EXPECT_THROW(make_function("PARITY:5000"), SizeLimit);
}

TEST(FourierSampling, DomainIsExactlyThePromise) {
  const auto f = make_function("FS:1:1");
  EXPECT_FALSE(f.is_total());
  EXPECT_EQ(f.n(), 4);
  // one promise input per hidden string r
  EXPECT_EQ(f.domain_size(), 2u);
  const auto inst = make_fs_instance(2, parse_bits("10"), {0, 1, 1, 0});
  ASSERT_TRUE(fs_recover_r(inst.encoded_input, 2).has_value());
  EXPECT_EQ(*fs_recover_r(inst.encoded_input, 2), parse_bits("10"));
}

TEST(Symmetry, WeightProfileDetected) {
  EXPECT_TRUE(make_function("MAJ:7").is_symmetric());
  EXPECT_TRUE(make_function("TT:96:3").is_symmetric());
  EXPECT_FALSE(make_function("OMB:3").is_symmetric());
  EXPECT_FALSE(make_function("TT:4:2").is_symmetric());
}

TEST(Sensitivity, BruteForceAgreement) {
  // independent count over all edges of the cube
  for (const char* spec : {"MAJ:4", "OR:5", "OMB:4", "PARITY:3", "TT:4:2"}) {
    const auto f = make_function(spec);
    const int n = f.n();
    long flips = 0;
    for (Mask x = 0; x < (Mask{1} << n); ++x) {
      for (int i = 1; i <= n; ++i) flips += f(x) != f(x ^ unit(i));
    }
    Rational want(Integer(flips), pow2(static_cast<unsigned long>(n)));
    want.canonicalize();
    EXPECT_EQ(average_sensitivity(f), want) << spec;
  }
  EXPECT_EQ(average_sensitivity(make_function("MAJ:4")), Rational(3, 2));
}

TEST(Sensitivity, SymmetricFormulaMatchesTable) {
  const auto big = make_function("MAJ:12");
  const auto table = BooleanFunction::from_table(12, [&] {
    std::vector<std::uint8_t> t(4096);
    for (Mask x = 0; x < 4096; ++x) t[x] = big(x);
    return t;
  }(), "table", {Family::TruthTable});
  EXPECT_EQ(average_sensitivity(big), average_sensitivity(table));
}
