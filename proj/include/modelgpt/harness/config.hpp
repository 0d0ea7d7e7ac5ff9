#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "modelgpt/modelgen/modelgen.hpp"

namespace modelgpt {

enum class InnerOpt { adam, sgd };

// Hypernet training knobs; defaults are the tabular protocol values.
struct TrainConfig {
    int epochs = 80;
    int batch_size = 64;
    int latent_dim = 25;
    float hypernet_lr = 1e-3f;
    float hypernet_weight_decay = 1e-4f;
    float target_lr = 2e-2f;
    float target_weight_decay = 1e-4f;
    std::uint64_t seed = 2024;
    InnerOpt inner_optimizer = InnerOpt::adam;
    int encoder_vocab = 4096;
    int encoder_dim = 64;
    SizeProfile profile;   // target sizing: hidden 32, 1 hidden layer
};

// Per-task baseline knobs (Finetune / LoRA rows of the comparison grid).
struct BaselineConfig {
    int epochs = 20;
    float lr = 2e-2f;
    float weight_decay = 1e-4f;
    int lora_r = 4;
    float lora_alpha = 8.0f;
    float lora_dropout = 0.1f;
};

struct LlmConfig {
    std::string endpoint;
    std::string model = "gpt-4";
    int timeout_seconds = 30;
};

struct AppConfig {
    TrainConfig train;
    BaselineConfig baseline;
    LlmConfig llm;
};

// section -> key -> value
using IniData = std::map<std::string, std::map<std::string, std::string>>;

// Minimal INI: [section] headers, key = value lines, '#'/';' comments.
// Throws ConfigError on malformed lines or duplicate keys.
IniData parse_ini(const std::string& path);

// Applies [train], [baseline] and [llm] sections over the defaults; unknown
// keys in those sections are ConfigErrors so typos cannot silently pass.
AppConfig load_app_config(const std::string& path);

// Sanity limits (positive dims, rates, epochs); throws ConfigError.
void validate(const TrainConfig& cfg);

}  // namespace modelgpt
