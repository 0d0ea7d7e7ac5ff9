#include "modelgpt/harness/config.hpp"

#include <cctype>
#include <fstream>

#include "modelgpt/errors.hpp"

namespace modelgpt {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used == value.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("config key '" + key + "' wants an integer, got '" + value + "'");
}

float to_float(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const float v = std::stof(value, &used);
        if (used == value.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("config key '" + key + "' wants a number, got '" + value + "'");
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used == value.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("config key '" + key + "' wants an unsigned integer, got '" + value + "'");
}

}  // namespace

IniData parse_ini(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config: " + path);

    IniData data;
    std::string section;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(path + " line " + std::to_string(line_no) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + " line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + " line " + std::to_string(line_no) + ": empty key");
        if (data[section].count(key))
            throw ConfigError(path + " line " + std::to_string(line_no) + ": duplicate key '" +
                              key + "' in [" + section + "]");
        data[section][key] = value;
    }
    return data;
}

AppConfig load_app_config(const std::string& path) {
    const IniData data = parse_ini(path);
    AppConfig cfg;

    if (auto it = data.find("train"); it != data.end()) {
        for (const auto& [key, value] : it->second) {
            if (key == "epochs") cfg.train.epochs = to_int(key, value);
            else if (key == "batch_size") cfg.train.batch_size = to_int(key, value);
            else if (key == "latent_dim") cfg.train.latent_dim = to_int(key, value);
            else if (key == "hypernet_lr") cfg.train.hypernet_lr = to_float(key, value);
            else if (key == "hypernet_weight_decay")
                cfg.train.hypernet_weight_decay = to_float(key, value);
            else if (key == "target_lr") cfg.train.target_lr = to_float(key, value);
            else if (key == "target_weight_decay")
                cfg.train.target_weight_decay = to_float(key, value);
            else if (key == "seed") cfg.train.seed = to_u64(key, value);
            else if (key == "encoder_vocab") cfg.train.encoder_vocab = to_int(key, value);
            else if (key == "encoder_dim") cfg.train.encoder_dim = to_int(key, value);
            else if (key == "hidden_dim") cfg.train.profile.hidden_dim = to_int(key, value);
            else if (key == "n_layers") cfg.train.profile.n_layers = to_int(key, value);
            else if (key == "inner_optimizer") {
                if (value == "adam") cfg.train.inner_optimizer = InnerOpt::adam;
                else if (value == "sgd") cfg.train.inner_optimizer = InnerOpt::sgd;
                else throw ConfigError("inner_optimizer must be adam or sgd, got '" +
                                       value + "'");
            } else {
                throw ConfigError("unknown [train] key '" + key + "' in " + path);
            }
        }
    }

    if (auto it = data.find("baseline"); it != data.end()) {
        for (const auto& [key, value] : it->second) {
            if (key == "epochs") cfg.baseline.epochs = to_int(key, value);
            else if (key == "lr") cfg.baseline.lr = to_float(key, value);
            else if (key == "weight_decay") cfg.baseline.weight_decay = to_float(key, value);
            else if (key == "lora_r") cfg.baseline.lora_r = to_int(key, value);
            else if (key == "lora_alpha") cfg.baseline.lora_alpha = to_float(key, value);
            else if (key == "lora_dropout") cfg.baseline.lora_dropout = to_float(key, value);
            else throw ConfigError("unknown [baseline] key '" + key + "' in " + path);
        }
    }

    if (auto it = data.find("llm"); it != data.end()) {
        for (const auto& [key, value] : it->second) {
            if (key == "endpoint") cfg.llm.endpoint = value;
            else if (key == "model") cfg.llm.model = value;
            else if (key == "timeout_seconds") cfg.llm.timeout_seconds = to_int(key, value);
            else throw ConfigError("unknown [llm] key '" + key + "' in " + path);
        }
    }

    validate(cfg.train);
    return cfg;
}

void validate(const TrainConfig& cfg) {
    auto positive = [](const char* name, double v) {
        if (v <= 0)
            throw ConfigError(std::string("config value ") + name + " must be positive");
    };
    positive("epochs", cfg.epochs);
    positive("batch_size", cfg.batch_size);
    positive("latent_dim", cfg.latent_dim);
    positive("hypernet_lr", cfg.hypernet_lr);
    positive("target_lr", cfg.target_lr);
    positive("encoder_vocab", cfg.encoder_vocab);
    positive("encoder_dim", cfg.encoder_dim);
    positive("hidden_dim", cfg.profile.hidden_dim);
    if (cfg.hypernet_weight_decay < 0 || cfg.target_weight_decay < 0)
        throw ConfigError("weight decay cannot be negative");
    if (cfg.profile.n_layers < 0)
        throw ConfigError("config value n_layers cannot be negative");
}

}  // namespace modelgpt
