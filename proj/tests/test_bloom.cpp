#include <doctest.h>

#include <cmath>
#include <set>

#include "coursekit/bloom.hpp"
#include "coursekit/error.hpp"
#include "coursekit/eval.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace coursekit;

namespace {

std::vector<Example> random_batch(Rng& rng, std::size_t n, std::size_t dim, int classes) {
  std::vector<Example> out;
  for (std::size_t i = 0; i < n; ++i) {
    Example e;
    for (std::size_t d = 0; d < dim; ++d) e.features.push_back(rng.normal());
    e.label = static_cast<int>(rng.index(static_cast<std::size_t>(classes)));
    out.push_back(std::move(e));
  }
  return out;
}

double accuracy(const MlpModel& m, const std::vector<Example>& xs) {
  std::size_t ok = 0;
  for (const auto& e : xs) ok += predict(m, e.features).label == e.label;
  return static_cast<double>(ok) / static_cast<double>(xs.size());
}

}  // namespace

TEST_CASE("verb collapse table") {
  CHECK(collapse_verb(BloomVerb::Identify) == BloomClass::Knowledge);
  CHECK(collapse_verb(BloomVerb::Describe) == BloomClass::Understand);
  CHECK(collapse_verb(BloomVerb::Determine) == BloomClass::Apply);
  CHECK(collapse_verb(BloomVerb::Outline) == BloomClass::Analyze);
  CHECK(parse_bloom_verb("explain") == BloomVerb::Explain);
  CHECK_FALSE(parse_bloom_verb("memorize").has_value());
}

TEST_CASE("labels for 10 and 4 classes") {
  CHECK(verb_label(BloomVerb::Outline, 10) == 8);
  CHECK(verb_label(BloomVerb::Outline, 4) == 2);
  CHECK(label_name(9, 10) == "determine");
  CHECK(label_name(1, 4) == "understand");
  CHECK_THROWS_AS(check_class_count(3), ArgumentError);
  CHECK_THROWS_AS(label_name(4, 4), ArgumentError);
}

TEST_CASE("feature vector shape") {
  const auto& t = fixtures::test_vectors();
  const std::vector<std::string> doc{"ach", "payments", "clearing"};
  const std::vector<std::string> kp{"ach", "payments"}, oov{"zzz"}, other{"wire"};
  const Vector f = featurize(doc, kp, t);
  CHECK(f.size() == 16);
  const Vector g = featurize(doc, oov, t);
  for (std::size_t i = 8; i < 16; ++i) CHECK(g[i] == 0.0);
  const Vector h = featurize(doc, other, t);
  for (std::size_t i = 0; i < 8; ++i) CHECK(f[i] == h[i]);
}

TEST_CASE("analytic gradients match central differences") {
  Rng rng(99);
  const auto batch = random_batch(rng, 10, 6, 4);
  MlpModel m = init_mlp(6, 4, 9, 7, 5);
  for (auto& layer : m.layers)
    for (auto& b : layer.bias) b = rng.uniform(-0.1, 0.1);
  const auto r = oracles::gradient_check(m, batch, 1e-4);
  CHECK(r.checked > 0);
  CHECK(r.worst <= 1e-4);
}

TEST_CASE("training is deterministic per seed") {
  const auto xs = fixtures::separable_examples(1, 60, 8);
  TrainConfig cfg;
  cfg.epochs = 5;
  cfg.seed = 42;
  const MlpModel a = train_mlp(xs, cfg, 2);
  const MlpModel b = train_mlp(xs, cfg, 2);
  CHECK(a == b);
  cfg.seed = 43;
  CHECK_FALSE(train_mlp(xs, cfg, 2) == a);
}

TEST_CASE("separable blobs are learned") {
  const auto xs = fixtures::separable_examples(2, 200, 16);
  std::vector<double> losses;
  const MlpModel m = train_mlp(xs, TrainConfig{}, 2, &losses);
  CHECK(accuracy(m, xs) >= 0.95);
  REQUIRE(losses.size() == 100);
  CHECK(losses.back() < losses.front());
}

TEST_CASE("probabilities form a distribution") {
  Rng rng(4);
  const MlpModel m = init_mlp(5, 10, 16, 8, 1);
  for (const auto& e : random_batch(rng, 20, 5, 10)) {
    const auto p = forward_probabilities(m, e.features);
    double s = 0.0;
    for (double x : p) {
      CHECK(x >= 0.0);
      s += x;
    }
    CHECK(std::abs(s - 1.0) <= 1e-9);
  }
}

TEST_CASE("a zero model predicts uniformly and picks class 0") {
  MlpModel m = init_mlp(3, 4, 5, 5, 0);
  for (auto& layer : m.layers) {
    std::fill(layer.weights.begin(), layer.weights.end(), 0.0);
    std::fill(layer.bias.begin(), layer.bias.end(), 0.0);
  }
  const std::vector<double> x{1, 2, 3};
  const Prediction p = predict(m, x);
  CHECK(p.label == 0);
  for (double q : p.probabilities) CHECK(q == doctest::Approx(0.25));
}

TEST_CASE("training input checks") {
  auto xs = fixtures::separable_examples(1, 10, 4);
  for (auto& e : xs) e.label = 1;
  CHECK_THROWS_AS(train_mlp(xs, TrainConfig{}, 2), DegenerateTrainingError);
  CHECK_THROWS_AS(train_mlp({}, TrainConfig{}, 2), DegenerateTrainingError);
  xs[0].label = 5;
  CHECK_THROWS_AS(train_mlp(xs, TrainConfig{}, 2), ArgumentError);
  TrainConfig bad;
  bad.learning_rate = 0;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  const MlpModel m = init_mlp(3, 2, 2, 2, 0);
  const std::vector<double> wrong{1, 2};
  CHECK_THROWS_AS(predict(m, wrong), ArgumentError);
}

TEST_CASE("model text round trip") {
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.h1 = 12;
  cfg.h2 = 6;
  const MlpModel m = train_mlp(fixtures::separable_examples(3, 40, 6), cfg, 2);
  const std::string text = serialize_model(m);
  const MlpModel back = deserialize_model(text);
  CHECK(back == m);
  CHECK(serialize_model(back) == text);

  const auto dir = fixtures::scratch_dir("model");
  save_model(m, dir / "m.txt");
  CHECK(load_model(dir / "m.txt") == m);

  CHECK_THROWS_AS(deserialize_model("not a model\n"), FormatError);
  CHECK_THROWS_AS(deserialize_model(text.substr(0, text.size() / 2)), FormatError);
}

TEST_CASE("folds partition chunks") {
  const auto xs = fixtures::separable_examples(5, 100, 4);
  const auto folds = assign_chunk_folds(xs, 10, 7);
  std::set<std::string> seen;
  for (const auto& f : folds) {
    CHECK(f.size() == 2);
    for (const auto& c : f) CHECK(seen.insert(c).second);
  }
  CHECK(seen.size() == 20);
  CHECK(assign_chunk_folds(xs, 10, 7) == folds);
  CHECK_THROWS_AS(assign_chunk_folds(xs, 21, 7), ArgumentError);

  const auto cv = cross_validate(
      xs, 10,
      [&](std::span<const Example> train, std::size_t fold) -> Classifier {
        for (const auto& e : train) {
          for (const auto& held : folds[fold]) CHECK(e.chunk_id != held);
        }
        return [](std::span<const double>) { return 0; };
      },
      2, 7);
  CHECK(cv.test_chunks == folds);
}

TEST_CASE("cross validation with stub classifiers") {
  const auto xs = fixtures::separable_examples(5, 100, 4);
  const auto perfect = cross_validate(
      xs, 5,
      [](std::span<const Example>, std::size_t) -> Classifier {
        return [](std::span<const double> x) { return x[0] > 5.0 ? 1 : 0; };
      },
      2, 1);
  CHECK(perfect.mean_f1 == 1.0);

  // 10 examples, gold labels 5/3/2, everything predicted as class 0:
  // F1(0) = 2*5/(5+10) = 2/3, others 0, weighted = 0.5 * 2/3 = 1/3.
  std::vector<Example> skew;
  const int golds[] = {0, 0, 0, 0, 0, 1, 1, 1, 2, 2};
  for (int i = 0; i < 10; ++i) skew.push_back({{0.0}, golds[i], "c." + std::to_string(i)});
  const auto constant = cross_validate(
      skew, 2,
      [](std::span<const Example>, std::size_t) -> Classifier {
        return [](std::span<const double>) { return 0; };
      },
      3, 0);
  std::vector<int> all_preds(10, 0), all_golds(golds, golds + 10);
  CHECK(weighted_f1(all_preds, all_golds, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(constant.fold_f1.size() == 2);
}

TEST_CASE("majority baseline") {
  std::vector<Example> balanced;
  for (int i = 0; i < 10; ++i) balanced.push_back({{0.0}, i % 2, "c"});
  CHECK(majority_label(balanced, 2) == 0);
  CHECK(majority_baseline(balanced, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  std::vector<Example> dominant;
  for (int i = 0; i < 100; ++i) dominant.push_back({{0.0}, i < 90 ? 1 : 0, "c"});
  // F1 of the majority class: 2*90/(90+100) = 18/19; weighted by 0.9.
  CHECK(majority_baseline(dominant, 2) == doctest::Approx(0.9 * 18.0 / 19.0).epsilon(1e-12));
}

TEST_CASE("objective generation") {
  const auto& t = fixtures::test_vectors();
  TrainConfig cfg;
  cfg.epochs = 2;
  cfg.h1 = 8;
  cfg.h2 = 4;
  std::vector<Example> xs;
  const std::vector<std::string> doc{"ach", "payments"};
  for (int i = 0; i < 20; ++i) {
    const std::vector<std::string> kp{i % 2 ? "ach" : "drug"};
    xs.push_back({featurize(doc, kp, t).values(), i % 2 ? 6 : 0, "c"});
  }
  const MlpModel m = train_mlp(xs, cfg, 10);

  std::vector<ScoredKeyphrase> ranked{{{"ach payments", 1.0}, {}, 0.9}, {{"wire", 0.5}, {}, 0.4}};
  const auto objectives = generate_objectives(doc, ranked, m, t, fixtures::stoplist());
  REQUIRE(objectives.size() == 2);
  CHECK(objectives[0].keyphrase == "ach payments");
  CHECK(objectives[1].keyphrase == "wire");
  CHECK(objectives[0].score == 0.9);
  for (const auto& o : objectives) {
    CHECK(parse_bloom_verb(o.verb).has_value());
    CHECK(o.text() == o.verb + " " + o.keyphrase);
  }
  CHECK(generate_objectives(doc, {}, m, t, fixtures::stoplist()).empty());

  LearningObjective lo{"describe", "ach payments", 0.0, 0.0};
  CHECK(lo.text() == "describe ach payments");

  const MlpModel wrong = init_mlp(5, 4, 3, 3, 0);
  CHECK_THROWS_AS(generate_objectives(doc, ranked, wrong, t, fixtures::stoplist()), ArgumentError);
}
