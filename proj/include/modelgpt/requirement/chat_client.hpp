#pragma once

#include <string>

#include "modelgpt/requirement/requirement.hpp"

namespace modelgpt {

// Anything that can turn a prompt into an assistant message.
class ChatClient {
public:
    virtual ~ChatClient() = default;
    virtual std::string complete(const std::string& prompt) = 0;
};

// Talks to an OpenAI-style chat-completion endpoint. The bearer token is
// read from the MODELGPT_LLM_KEY environment variable when present.
class HttpChatClient : public ChatClient {
public:
    // endpoint is a full URL, e.g. "http://127.0.0.1:8080/v1/chat/completions"
    HttpChatClient(std::string endpoint, std::string model, int timeout_seconds = 30);

    std::string complete(const std::string& prompt) override;

private:
    std::string base_;   // scheme://host[:port]
    std::string path_;
    std::string model_;
    int timeout_seconds_;
};

// Ask the client to summarize the prompt and normalize the reply into a
// one-sentence Requirement (source = llm). Throws DegenerateResponseError
// when the endpoint returns nothing usable.
Requirement summarize(const std::string& prompt, ChatClient& client);

}  // namespace modelgpt
