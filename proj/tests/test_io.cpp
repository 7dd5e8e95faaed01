#include <gtest/gtest.h>

#include <blochvec/io.hpp>

#include "test_support.hpp"

using namespace blochvec;

TEST(Documents, RoundTripEveryKind) {
  const auto basis = build_gellmann_basis(3);
  std::vector<io::MatrixDocument> docs;
  docs.push_back(io::document_of(HermitianOperator(testsupport::random_density(3))));
  docs.push_back(io::document_of(to_coherence(HermitianOperator(testsupport::random_density(3)), basis)));
  docs.push_back(io::document_of(AffineMap(3, RealMatrix::Random(8, 8), RealVector::Random(8))));
  io::MatrixDocument ket;
  ket.kind = io::DocumentKind::Ket;
  ket.dims = {2, 2, 2};
  ket.dim = 8;
  ket.amplitudes = testsupport::haar_ket(8);
  docs.push_back(ket);
  auto layered = io::document_of(HermitianOperator(testsupport::random_density(4)));
  layered.dims = {2, 2};
  docs.push_back(layered);

  for (const auto& d : docs) {
    const auto back = io::parse(io::to_json(d).dump());
    EXPECT_TRUE(back == d) << io::to_string(d.kind);
  }
}

TEST(Documents, ParseErrors) {
  const std::vector<std::string> bad = {
      "{\"kind\": \"matrix\", \"dim\": 2, \"matrix\": [[1, 0]",
      "[1, 2]",
      "{\"kind\": \"matrix\", \"dim\": 2, \"matrix\": [[[1,0],[0,0]]]}",
      "{\"kind\": \"matrix\", \"dim\": 2, \"matrix\": [[1, 0], [0, 0]]}",
      "{\"kind\": \"coherence\", \"dim\": 3, \"n\": [0, 0]}",
      "{\"kind\": \"tensor\", \"dim\": 3}",
      "{\"format_version\": 7, \"kind\": \"matrix\", \"dim\": 1}",
      "{\"kind\": \"matrix\", \"dims\": [2, 2], \"dim\": 3, \"matrix\": []}",
  };
  for (const auto& text : bad) {
    try {
      io::parse(text);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Parse) << text;
    }
  }
}

TEST(Documents, MatrixDimFromLayout) {
  const auto d = io::parse(R"({"kind": "matrix", "dims": [2, 2], "matrix": [
    [[0.25,0],[0,0],[0,0],[0,0]], [[0,0],[0.25,0],[0,0],[0,0]],
    [[0,0],[0,0],[0.25,0],[0,0]], [[0,0],[0,0],[0,0],[0.25,0]]]})");
  EXPECT_EQ(d.dim, 4);
  EXPECT_EQ(d.dims, (std::vector<int>{2, 2}));
}

TEST(BasisExport, FlatRowMajorElements) {
  const auto j = io::basis_to_json(build_gellmann_basis(2));
  EXPECT_EQ(j["dim"], 2);
  ASSERT_EQ(j["elements"].size(), 3u);
  // sigma_y row-major: 0, -i, i, 0
  EXPECT_EQ(j["elements"][1][1][1].get<double>(), -1.0);
  EXPECT_EQ(j["elements"][1][2][1].get<double>(), 1.0);
}
