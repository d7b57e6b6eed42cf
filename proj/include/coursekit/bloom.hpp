#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coursekit/embeddings.hpp"
#include "coursekit/keyphrase.hpp"

namespace coursekit {

enum class BloomVerb {
  Identify, Define, Recall, Recognize, Select, List, Describe, Explain, Outline, Determine
};

enum class BloomClass { Knowledge, Understand, Analyze, Apply };

inline constexpr std::array<BloomVerb, 10> kAllVerbs = {
    BloomVerb::Identify, BloomVerb::Define,   BloomVerb::Recall,  BloomVerb::Recognize,
    BloomVerb::Select,   BloomVerb::List,     BloomVerb::Describe, BloomVerb::Explain,
    BloomVerb::Outline,  BloomVerb::Determine};

inline constexpr std::array<BloomClass, 4> kAllClasses = {
    BloomClass::Knowledge, BloomClass::Understand, BloomClass::Analyze, BloomClass::Apply};

std::string_view to_string(BloomVerb v);
std::string_view to_string(BloomClass c);
std::optional<BloomVerb> parse_bloom_verb(std::string_view s);
BloomClass collapse_verb(BloomVerb v);

// Label index of a verb for a 10- or 4-class model, and the reverse naming.
int verb_label(BloomVerb v, int classes);
std::string_view label_name(int label, int classes);
void check_class_count(int classes);

Vector featurize(std::span<const std::string> doc_tokens, std::span<const std::string> kp_tokens,
                 const EmbeddingTable& table);

struct TrainConfig {
  std::size_t h1 = 128;
  std::size_t h2 = 64;
  double learning_rate = 0.01;
  int epochs = 100;
  std::size_t batch_size = 16;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Example {
  std::vector<double> features;
  int label = 0;
  std::string chunk_id;
};

// Fully connected layer, weights row-major (outputs x inputs).
struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  bool operator==(const DenseLayer&) const = default;
};

// input -> ReLU(dense) -> ReLU(dense) -> softmax(dense)
struct MlpModel {
  int classes = 0;
  std::size_t input_dim = 0;
  std::size_t h1 = 0;
  std::size_t h2 = 0;
  std::uint64_t seed = 0;
  std::array<DenseLayer, 3> layers;

  bool operator==(const MlpModel&) const = default;
};

MlpModel init_mlp(std::size_t input_dim, int classes, std::size_t h1, std::size_t h2,
                  std::uint64_t seed);

// Same shapes as the model; holds d(loss)/d(parameter).
using MlpGradients = std::array<DenseLayer, 3>;

std::vector<double> forward_probabilities(const MlpModel& m, std::span<const double> features);
double mean_cross_entropy(const MlpModel& m, std::span<const Example> batch);
MlpGradients mean_gradients(const MlpModel& m, std::span<const Example> batch);

MlpModel train_mlp(std::span<const Example> examples, const TrainConfig& cfg, int classes,
                   std::vector<double>* epoch_losses = nullptr);

struct Prediction {
  int label = 0;
  std::vector<double> probabilities;
};

Prediction predict(const MlpModel& m, std::span<const double> features);

// Versioned text format; parameters printed with round-trip precision.
std::string serialize_model(const MlpModel& m);
MlpModel deserialize_model(std::string_view content, const std::string& source = "<memory>");
void save_model(const MlpModel& m, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

using Classifier = std::function<int(std::span<const double>)>;
using Trainer = std::function<Classifier(std::span<const Example> train, std::size_t fold)>;

struct CrossValidationResult {
  std::vector<double> fold_f1;
  double mean_f1 = 0.0;
  // Per fold, the chunk ids held out for testing.
  std::vector<std::vector<std::string>> test_chunks;
};

// Folds partition the distinct chunk ids (seeded shuffle, round-robin).
std::vector<std::vector<std::string>> assign_chunk_folds(std::span<const Example> examples,
                                                         std::size_t folds, std::uint64_t seed);

CrossValidationResult cross_validate(std::span<const Example> examples, std::size_t folds,
                                     const Trainer& trainer, int classes, std::uint64_t seed = 0);
CrossValidationResult cross_validate(std::span<const Example> examples, std::size_t folds,
                                     const TrainConfig& cfg, int classes);

// Majority label of the examples (ties to the lowest index).
int majority_label(std::span<const Example> examples, int classes);
double majority_baseline(std::span<const Example> examples, int classes);

struct LearningObjective {
  std::string verb;
  std::string keyphrase;
  double score = 0.0;
  double verb_confidence = 0.0;

  std::string text() const { return verb + " " + keyphrase; }
};

std::vector<LearningObjective> generate_objectives(std::span<const std::string> chunk_tokens,
                                                   std::span<const ScoredKeyphrase> ranked,
                                                   const MlpModel& model,
                                                   const EmbeddingTable& table,
                                                   const Stoplist& stoplist);

}  // namespace coursekit
