// Copyright 2026 The CaptionForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "captionforge/ensemble.h"
#include "captionforge/errors.h"
#include "captionforge/policy.h"
#include "doctest.h"
#include "gen.h"

namespace cf = captionforge;
namespace e = captionforge::ensemble;
namespace d = captionforge::decode;
using Dists = std::vector<std::vector<double>>;
using Eigen::VectorXd;

namespace {

std::span<const double> Span(const VectorXd& v) {
  return {v.data(), static_cast<size_t>(v.size())};
}

std::shared_ptr<const d::StepModel> Model(int vocab, int hidden, int feat,
                                          std::uint64_t seed, double scale = 1.0) {
  auto params = std::make_shared<const cf::policy::PolicyParams>(
      cf::policy::PolicyParams::RandomUniform(vocab, hidden, feat, seed, scale));
  return std::make_shared<const cf::policy::PolicyStepModel>(params);
}

double Sum(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

TEST_CASE("fuse step examples") {
  const std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
  const Dists same(3, p);
  CHECK(e::FuseStep(same, e::UniformWeights(3)) == p);

  const Dists hot = {{0, 1, 0, 0}, {0, 0, 0, 1}};
  CHECK(e::FuseStep(hot, std::vector<double>{0.5, 0.5}) ==
        std::vector<double>{0, 0.5, 0, 0.5});

  const Dists two = {p, {0.7, 0.1, 0.1, 0.1}};
  CHECK(e::FuseStep(two, std::vector<double>{1.0, 0.0}) == p);
  const auto mixed = e::FuseStep(two, std::vector<double>{0.25, 0.75});
  for (size_t i = 0; i < 4; ++i) {
    CHECK(mixed[i] == doctest::Approx(0.25 * p[i] + 0.75 * two[1][i]).epsilon(1e-15));
  }
}

TEST_CASE("fuse step is a probability vector and permutation equivariant") {
  testgen::Gen g(21);
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = g.Range(1, 6), V = g.Range(1, 30);
    Dists dists;
    for (int i = 0; i < k; ++i) dists.push_back(testgen::Distribution(g, V));
    const std::vector<double> w = testgen::Simplex(g, k);
    const auto fused = e::FuseStep(dists, w);
    CHECK(std::fabs(Sum(fused) - 1.0) <= 1e-12);
    for (double x : fused) CHECK(x >= 0.0);

    std::vector<size_t> perm(static_cast<size_t>(k));
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[g.Int(static_cast<int>(i))]);
    Dists pd;
    std::vector<double> pw;
    for (size_t i : perm) {
      pd.push_back(dists[i]);
      pw.push_back(w[i]);
    }
    const auto permuted = e::FuseStep(pd, pw);
    for (int v = 0; v < V; ++v) CHECK(std::fabs(permuted[v] - fused[v]) <= 1e-15);
  }
}

TEST_CASE("geometric fusion") {
  const Dists two = {{0.5, 0.5, 0.0}, {0.2, 0.8, 0.0}};
  const auto g = e::FuseStepGeometric(two, std::vector<double>{0.5, 0.5});
  const double a = std::sqrt(0.1), b = std::sqrt(0.4);
  CHECK(g[0] == doctest::Approx(a / (a + b)).epsilon(1e-15));
  CHECK(g[1] == doctest::Approx(b / (a + b)).epsilon(1e-15));
  CHECK(g[2] == 0.0);
  const Dists disjoint = {{1, 0}, {0, 1}};
  CHECK_THROWS_AS(e::FuseStepGeometric(disjoint, std::vector<double>{0.5, 0.5}),
                  cf::NumericalError);
  CHECK(e::ParseFusionMode("average") == e::FusionMode::kArithmetic);
  CHECK(e::ParseFusionMode("geometric") == e::FusionMode::kGeometric);
  CHECK_THROWS_AS(e::ParseFusionMode("max"), cf::InputError);
}

TEST_CASE("weight validation") {
  CHECK_NOTHROW(e::ValidateWeights(std::vector<double>{0.5, 0.5}, 2));
  CHECK_NOTHROW(e::ValidateWeights(std::vector<double>{0.5, 0.5 + 5e-10}, 2));
  CHECK_THROWS_AS(e::ValidateWeights(std::vector<double>{0.5, 0.5 + 1e-8}, 2),
                  cf::InvalidWeightsError);
  CHECK_THROWS_AS(e::ValidateWeights(std::vector<double>{1.2, -0.2}, 2),
                  cf::InvalidWeightsError);
  CHECK_THROWS_AS(e::ValidateWeights(std::vector<double>{1.0}, 2), cf::InvalidWeightsError);
  CHECK_THROWS_AS(e::ValidateWeights(
                      std::vector<double>{std::numeric_limits<double>::quiet_NaN(), 1.0}, 2),
                  cf::InvalidWeightsError);
  const Dists uneven = {{0.5, 0.5}, {1.0, 0.0, 0.0}};
  CHECK_THROWS_AS(e::FuseStep(uneven, std::vector<double>{0.5, 0.5}),
                  cf::MismatchedVocabError);
}

TEST_CASE("spec validation") {
  e::EnsembleSpec empty;
  CHECK_THROWS_AS(empty.Validate(), cf::InputError);
  auto spec = e::EnsembleSpec::Average({Model(8, 4, 3, 1), Model(8, 5, 3, 2)});
  CHECK_NOTHROW(spec.Validate());
  CHECK(spec.weights == std::vector<double>{0.5, 0.5});
  auto vocab = e::EnsembleSpec::Average({Model(8, 4, 3, 1), Model(9, 4, 3, 2)});
  CHECK_THROWS_AS(vocab.Validate(), cf::MismatchedVocabError);
  auto feat = e::EnsembleSpec::Average({Model(8, 4, 3, 1), Model(8, 4, 2, 2)});
  CHECK_THROWS_AS(feat.Validate(), cf::MismatchedVocabError);
  spec.weights = {0.7, 0.4};
  CHECK_THROWS_AS(spec.Validate(), cf::InvalidWeightsError);
  const VectorXd f = VectorXd::Zero(3);
  CHECK_THROWS_AS(e::EnsembleBeamSearch(vocab, Span(f)), cf::MismatchedVocabError);
}

TEST_CASE("single model and copies reproduce plain beam search") {
  for (int m = 0; m < 10; ++m) {
    const auto model = Model(10, 6, 4, 70 + m);
    testgen::Gen g(m);
    VectorXd f(4);
    for (int i = 0; i < 4; ++i) f[i] = g.Uniform(-1, 1);
    const auto plain = d::BeamSearch(*model, Span(f), 3);
    CHECK(e::EnsembleBeamSearch(e::EnsembleSpec::Average({model}), Span(f)) == plain);
    CHECK(e::EnsembleBeamSearch(e::EnsembleSpec::Average({model, model, model}), Span(f)) ==
          plain);
    e::EnsembleSpec weighted{{model, model}, {0.3, 0.7}};
    CHECK(e::EnsembleBeamSearch(weighted, Span(f)) == plain);
  }
}

TEST_CASE("two member ensemble matches brute force over fused steps") {
  for (int m = 0; m < 50; ++m) {
    const auto a = Model(4, 4, 3, 1000 + m, 1.5);
    const auto b = Model(4, 3, 3, 2000 + m, 1.5);
    testgen::Gen g(3000 + m);
    VectorXd f(3);
    for (int i = 0; i < 3; ++i) f[i] = g.Uniform(-1, 1);
    const double w = g.Uniform(0.05, 0.95);

    d::DecodeOptions opt;
    opt.max_len = 3;
    opt.banned = {};
    opt.length_norm = g.Coin(0.5);

    // Each member is stepped on its own state; fusion is a plain weighted sum.
    struct Best {
      std::vector<cf::TokenId> ids;
      bool finished = false;
      double score = -INFINITY;
    } best;
    std::function<void(const d::ModelState&, const d::ModelState&, cf::TokenId,
                       std::vector<cf::TokenId>&, double)>
        walk = [&](const d::ModelState& sa, const d::ModelState& sb, cf::TokenId prev,
                   std::vector<cf::TokenId>& ids, double lp) {
          d::ModelState na, nb;
          const auto pa = a->NextDistribution(sa, prev, Span(f), na);
          const auto pb = b->NextDistribution(sb, prev, Span(f), nb);
          const bool last = static_cast<int>(ids.size()) + 1 == opt.max_len;
          for (int v = 0; v < 4; ++v) {
            const double total = lp + std::log(w * pa[v] + (1 - w) * pb[v]);
            if (v == opt.eos || last) {
              const bool fin = v == opt.eos;
              if (!fin) ids.push_back(v);
              const double steps = static_cast<double>(ids.size()) + (fin ? 1 : 0);
              const double score = opt.length_norm ? total / steps : total;
              if (score > best.score) best = {ids, fin, score};
              if (!fin) ids.pop_back();
              continue;
            }
            ids.push_back(v);
            walk(na, nb, v, ids, total);
            ids.pop_back();
          }
        };
    std::vector<cf::TokenId> ids;
    walk(a->InitialState(), b->InitialState(), opt.bos, ids, 0.0);

    const e::EnsembleSpec spec{{a, b}, {w, 1 - w}};
    const auto top = e::EnsembleBeamSearch(spec, Span(f), 64, opt)[0];
    CHECK(top.ids == best.ids);
    CHECK(top.finished == best.finished);
    CHECK(top.score == doctest::Approx(best.score).epsilon(1e-12));
  }
}

TEST_CASE("ensemble model state is the concatenation of member states") {
  const auto a = Model(7, 4, 2, 5), b = Model(7, 6, 2, 6);
  const e::EnsembleModel model(e::EnsembleSpec::Average({a, b}));
  CHECK(model.vocab_size() == 7);
  CHECK(model.feature_size() == 2);
  const auto s = model.InitialState();
  CHECK(s.size() == a->InitialState().size() + b->InitialState().size());
}
