#include <gtest/gtest.h>

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "detour/digest.hpp"
#include "detour/http.hpp"
#include "detour/llm.hpp"
#include "test_support.hpp"

using namespace detour;
using namespace detour::testing;

namespace {

ProviderConfig provider(const std::string& api = "openai") {
  ProviderConfig p;
  p.name = "fake-" + api;
  p.label = "Fake";
  p.api = api;
  p.endpoint = "https://llm.invalid/v1/{model}/chat";
  p.model_id = "model-x";
  p.auth_token_env = "FAKE_TOKEN";
  return p;
}

PromptBundle bundle(const std::string& user = "How do I get from A to D?") {
  return PromptBundle{"system text", user, {Attachment{"image/png", std::string("\x89PNG\r\n\x1a\n", 8), "a map"}}};
}

HttpResponse openai_reply(const std::string& text) {
  return HttpResponse{200, json{{"choices", json::array({{{"message", {{"content", text}}}}})}}.dump()};
}

InvokeContext context(Transport* t, std::vector<std::chrono::milliseconds>* sleeps = nullptr) {
  InvokeContext ctx;
  ctx.transport = t;
  ctx.env = [](const std::string& name) -> std::optional<std::string> {
    if (name == "FAKE_TOKEN") return "secret";
    return std::nullopt;
  };
  ctx.clock = [] { return std::string("2024-05-01T17:30:00Z"); };
  ctx.sleep = [sleeps](std::chrono::milliseconds d) {
    if (sleeps) sleeps->push_back(d);
  };
  return ctx;
}

}  // namespace

TEST(Digest, KnownVectors) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(base64_encode(""), "");
  EXPECT_EQ(base64_encode("f"), "Zg==");
  EXPECT_EQ(base64_encode("fo"), "Zm8=");
  EXPECT_EQ(base64_encode("foobar"), "Zm9vYmFy");
}

TEST(Providers, LoadAndValidate) {
  const auto dir = scratch_dir("providers");
  write_file(dir / "ok.json", R"({"providers":[{"name":"a","api":"openai","endpoint":"https://x","model_id":"m",
    "auth_token_env":"A"},{"name":"b","label":"B","api":"gemini","endpoint":"https://y/{model}","model_id":"g",
    "auth_token_env":"B","temperature":0.5,"max_output_tokens":10}]})");
  const auto ps = load_providers((dir / "ok.json").string());
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].label, "a");
  EXPECT_EQ(ps[1].max_output_tokens, 10);
  EXPECT_EQ(provider_from_json(provider_to_json(ps[1])), ps[1]);

  write_file(dir / "dup.json", R"({"providers":[{"name":"a","api":"openai","endpoint":"e","model_id":"m",
    "auth_token_env":"A"},{"name":"a","api":"openai","endpoint":"e","model_id":"m","auth_token_env":"A"}]})");
  EXPECT_THROW(load_providers((dir / "dup.json").string()), DuplicateId);
  write_file(dir / "api.json",
             R"({"providers":[{"name":"a","api":"palm","endpoint":"e","model_id":"m","auth_token_env":"A"}]})");
  EXPECT_THROW(load_providers((dir / "api.json").string()), SchemaError);
  EXPECT_THROW(load_providers((dir / "missing.json").string()), SchemaError);
}

TEST(Bundles, ValidationAndSnapshot) {
  EXPECT_THROW(validate_bundle(PromptBundle{"", "u", {}}), InvariantViolation);
  EXPECT_THROW(validate_bundle(PromptBundle{"s", "u", {Attachment{"image/gif", "x", ""}}}), InvariantViolation);
  const json snap = bundle_snapshot(bundle());
  ASSERT_EQ(snap.at("attachments").size(), 1u);
  EXPECT_EQ(snap.at("attachments")[0].at("size"), 8);
  EXPECT_EQ(snap.at("attachments")[0].at("sha256"), sha256_hex(std::string("\x89PNG\r\n\x1a\n", 8)));
}

TEST(TranscriptKey, StableAndContentSensitive) {
  const auto p = provider();
  EXPECT_EQ(transcript_key(p, bundle()), transcript_key(p, bundle()));
  EXPECT_NE(transcript_key(p, bundle()), transcript_key(p, bundle("other")));
  auto q = p;
  q.model_id = "model-y";
  EXPECT_NE(transcript_key(p, bundle()), transcript_key(q, bundle()));
  auto with_other_image = bundle();
  with_other_image.attachments[0].bytes += "!";
  EXPECT_NE(transcript_key(p, bundle()), transcript_key(p, with_other_image));
  auto warmer = p;
  warmer.temperature = 0.7;
  EXPECT_EQ(transcript_key(p, bundle()), transcript_key(warmer, bundle()));
}

TEST(Invoke, ReplayHitAndMiss) {
  const auto dir = scratch_dir("replay");
  TranscriptStore store(dir);
  const auto p = provider();
  RecordingTransport offline;
  const auto ctx = context(&offline);
  EXPECT_THROW(invoke(p, bundle(), &store, IoMode::replay, ctx), ReplayMiss);
  EXPECT_THROW(invoke(p, bundle(), nullptr, IoMode::replay, ctx), ReplayMiss);
  store.put(Transcript{transcript_key(p, bundle()), request_snapshot(p, bundle()), "cached answer", "t"});
  EXPECT_EQ(invoke(p, bundle(), &store, IoMode::replay, ctx), "cached answer");
  EXPECT_EQ(offline.calls(), 0u);
}

TEST(Invoke, RecordThenReplayGivesSameText) {
  const auto dir = scratch_dir("record");
  TranscriptStore store(dir);
  const auto p = provider();
  RecordingTransport live([](const HttpRequest&) { return openai_reply("Take the G train from A to D."); });
  const std::string recorded = invoke(p, bundle(), &store, IoMode::record, context(&live));
  EXPECT_EQ(live.calls(), 1u);

  const auto t = store.find(transcript_key(p, bundle()));
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->recorded_at, "2024-05-01T17:30:00Z");
  EXPECT_EQ(t->request_snapshot.at("model_id"), "model-x");

  RecordingTransport offline;
  EXPECT_EQ(invoke(p, bundle(), &store, IoMode::replay, context(&offline)), recorded);
  EXPECT_EQ(offline.calls(), 0u);
}

TEST(Invoke, LiveDoesNotWriteTranscripts) {
  const auto dir = scratch_dir("live");
  TranscriptStore store(dir);
  RecordingTransport live([](const HttpRequest&) { return openai_reply("ok"); });
  EXPECT_EQ(invoke(provider(), bundle(), &store, IoMode::live, context(&live)), "ok");
  EXPECT_FALSE(store.find(transcript_key(provider(), bundle())).has_value());
}

TEST(Invoke, MissingTokenFailsBeforeAnyRequest) {
  RecordingTransport t([](const HttpRequest&) { return openai_reply("never"); });
  auto ctx = context(&t);
  ctx.env = [](const std::string&) { return std::optional<std::string>(); };
  EXPECT_THROW(invoke(provider(), bundle(), nullptr, IoMode::live, ctx), AuthError);
  EXPECT_EQ(t.calls(), 0u);
}

TEST(Invoke, RejectedCredentialsAreNotRetried) {
  RecordingTransport t([](const HttpRequest&) { return HttpResponse{401, "{}"}; });
  EXPECT_THROW(invoke(provider(), bundle(), nullptr, IoMode::live, context(&t)), AuthError);
  EXPECT_EQ(t.calls(), 1u);
}

TEST(Invoke, RetriesRateLimitsWithBackoff) {
  int n = 0;
  RecordingTransport t([&](const HttpRequest&) { return ++n < 3 ? HttpResponse{429, "{}"} : openai_reply("third"); });
  std::vector<std::chrono::milliseconds> sleeps;
  EXPECT_EQ(invoke(provider(), bundle(), nullptr, IoMode::live, context(&t, &sleeps)), "third");
  EXPECT_EQ(t.calls(), 3u);
  EXPECT_EQ(sleeps, (std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(1000),
                                                            std::chrono::milliseconds(2000)}));
}

TEST(Invoke, GivesUpAfterMaxAttempts) {
  RecordingTransport limited([](const HttpRequest&) { return HttpResponse{429, "{}"}; });
  EXPECT_THROW(invoke(provider(), bundle(), nullptr, IoMode::live, context(&limited)), RateLimited);
  EXPECT_EQ(limited.calls(), 3u);

  RecordingTransport broken([](const HttpRequest&) { return HttpResponse{503, "{}"}; });
  EXPECT_THROW(invoke(provider(), bundle(), nullptr, IoMode::live, context(&broken)), TransportError);
  EXPECT_EQ(broken.calls(), 3u);

  RecordingTransport refused;  // throws TransportError on every send
  EXPECT_THROW(invoke(provider(), bundle(), nullptr, IoMode::live, context(&refused)), TransportError);
  EXPECT_EQ(refused.calls(), 3u);

  RecordingTransport bad_request([](const HttpRequest&) { return HttpResponse{400, "{}"}; });
  EXPECT_THROW(invoke(provider(), bundle(), nullptr, IoMode::live, context(&bad_request)), TransportError);
  EXPECT_EQ(bad_request.calls(), 1u);
}

TEST(Adapters, OpenAiShape) {
  const auto req = build_provider_request(provider("openai"), bundle(), "tok");
  EXPECT_EQ(req.url, "https://llm.invalid/v1/model-x/chat");
  EXPECT_EQ(req.headers.at(0), (std::pair<std::string, std::string>{"Authorization", "Bearer tok"}));
  const json body = json::parse(req.body);
  EXPECT_EQ(body.at("messages")[0].at("content"), "system text");
  const json& content = body.at("messages")[1].at("content");
  EXPECT_EQ(content[0].at("text"), "How do I get from A to D?");
  EXPECT_EQ(content[1].at("text"), "a map");
  EXPECT_EQ(content[2].at("image_url").at("url"), "data:image/png;base64,iVBORw0KGgo=");
  EXPECT_EQ(llm_detail::response_text(provider("openai"), openai_reply("hi").body), "hi");
}

TEST(Adapters, AnthropicShape) {
  const auto p = provider("anthropic");
  const auto req = build_provider_request(p, bundle(), "tok");
  std::map<std::string, std::string> headers(req.headers.begin(), req.headers.end());
  EXPECT_EQ(headers.at("x-api-key"), "tok");
  EXPECT_EQ(headers.at("anthropic-version"), "2023-06-01");
  const json body = json::parse(req.body);
  EXPECT_EQ(body.at("system"), "system text");
  const json& content = body.at("messages")[0].at("content");
  EXPECT_EQ(content[0].at("source").at("data"), "iVBORw0KGgo=");
  EXPECT_EQ(content.back().at("text"), "How do I get from A to D?");
  const std::string reply = R"({"content":[{"type":"text","text":"a"},{"type":"tool_use"},{"type":"text","text":"b"}]})";
  EXPECT_EQ(llm_detail::response_text(p, reply), "ab");
}

TEST(Adapters, GeminiShape) {
  const auto p = provider("gemini");
  const auto req = build_provider_request(p, bundle(), "tok");
  EXPECT_EQ(req.headers.at(0).first, "x-goog-api-key");
  const json body = json::parse(req.body);
  EXPECT_EQ(body.at("system_instruction").at("parts")[0].at("text"), "system text");
  EXPECT_EQ(body.at("contents")[0].at("parts")[2].at("inline_data").at("mime_type"), "image/png");
  EXPECT_EQ(body.at("generationConfig").at("maxOutputTokens"), 1024);
  EXPECT_EQ(llm_detail::response_text(p, R"({"candidates":[{"content":{"parts":[{"text":"x"},{"text":"y"}]}}]})"),
            "xy");
  EXPECT_THROW(llm_detail::response_text(p, R"({"candidates":[]})"), TransportError);
  EXPECT_THROW(llm_detail::response_text(p, "not json"), TransportError);
}

TEST(Http, SplitUrl) {
  EXPECT_EQ(HttplibTransport::split_url("https://api.example.com/v1/x?y=1"),
            (std::pair<std::string, std::string>{"https://api.example.com", "/v1/x?y=1"}));
  EXPECT_EQ(HttplibTransport::split_url("http://h:8080"), (std::pair<std::string, std::string>{"http://h:8080", "/"}));
  EXPECT_THROW(HttplibTransport::split_url("no-scheme"), TransportError);
}

TEST(IoModes, Names) {
  for (IoMode m : {IoMode::live, IoMode::record, IoMode::replay}) EXPECT_EQ(parse_io_mode(to_string(m)), m);
  EXPECT_FALSE(parse_io_mode("offline").has_value());
}
