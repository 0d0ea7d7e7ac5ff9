#include "modelgpt/requirement/chat_client.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "modelgpt/errors.hpp"

namespace modelgpt {

HttpChatClient::HttpChatClient(std::string endpoint, std::string model, int timeout_seconds)
    : model_(std::move(model)), timeout_seconds_(timeout_seconds) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos)
        throw ConfigError("chat endpoint must be a full URL, got: " + endpoint);
    const auto path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        base_ = endpoint;
        path_ = "/";
    } else {
        base_ = endpoint.substr(0, path_start);
        path_ = endpoint.substr(path_start);
    }
}

std::string HttpChatClient::complete(const std::string& prompt) {
    httplib::Client cli(base_);
    cli.set_connection_timeout(timeout_seconds_);
    cli.set_read_timeout(timeout_seconds_);

    httplib::Headers headers;
    if (const char* key = std::getenv("MODELGPT_LLM_KEY"))
        headers.emplace("Authorization", std::string("Bearer ") + key);

    nlohmann::json body = {
        {"model", model_},
        {"messages", {{{"role", "user"}, {"content", prompt}}}},
    };

    auto res = cli.Post(path_, headers, body.dump(), "application/json");
    if (!res)
        throw ClientError("chat endpoint unreachable: " + base_ + path_);
    if (res->status != 200)
        throw ClientError("chat endpoint returned status " + std::to_string(res->status));

    try {
        auto j = nlohmann::json::parse(res->body);
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ClientError(std::string("malformed chat response: ") + e.what());
    }
}

Requirement summarize(const std::string& prompt, ChatClient& client) {
    const std::string content = client.complete(prompt);
    const std::string sentence = normalize_sentence(content);
    if (sentence.empty())
        throw DegenerateResponseError("chat completion carried no sentence");
    Requirement r;
    r.sentence = sentence;
    r.source = ReqSource::llm;
    return r;
}

}  // namespace modelgpt
