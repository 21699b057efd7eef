// Copyright 2026 The Forge Authors
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

#include "forge/forge.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "forge/service.hpp"

struct forge_context {
  std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

forge_status dispatch(forge_context* ctx, const std::string& op, const forge::Json& req, char** response) {
  forge::ServiceResult r = forge::run_operation(op, req);
  ctx->last_error = r.error;
  *response = dup_string(r.body.dump(2));
  if (!*response) {
    ctx->last_error = "out of memory";
    return FORGE_INTERNAL;
  }
  return static_cast<forge_status>(r.status);
}

}  // namespace

extern "C" {

forge_context* forge_context_new(void) { return new (std::nothrow) forge_context(); }

void forge_context_free(forge_context* ctx) { delete ctx; }

forge_status forge_run(forge_context* ctx, const char* op, const char* request_json, char** response) {
  if (response) *response = nullptr;
  if (!ctx || !op || !request_json || !response) {
    if (ctx) ctx->last_error = "null argument";
    return FORGE_INPUT;
  }
  try {
    forge::Json req = forge::Json::parse(request_json);
    return dispatch(ctx, op, req, response);
  } catch (const forge::Json::parse_error& e) {
    ctx->last_error = std::string("malformed JSON: ") + e.what();
    *response = dup_string(forge::Json{{"error", ctx->last_error}}.dump(2));
    return FORGE_INPUT;
  } catch (const std::exception& e) {
    ctx->last_error = std::string("internal error: ") + e.what();
    return FORGE_INTERNAL;
  }
}

const char* forge_last_error(const forge_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

void forge_string_free(char* s) { std::free(s); }

const char* forge_version(void) { return forge::kToolVersion; }

forge_status forge_selftest(forge_context* ctx, const char* filter, unsigned long long seed, const char* faults,
                            int threads, char** response) {
  if (response) *response = nullptr;
  if (!ctx || !response) return FORGE_INPUT;
  try {
    forge::Json req = {{"filter", filter ? filter : ""}, {"seed", seed}, {"threads", threads},
                       {"faults", forge::Json::array()}};
    if (faults) {
      std::stringstream ss(faults);
      std::string f;
      while (std::getline(ss, f, ',')) {
        if (!f.empty()) req["faults"].push_back(f);
      }
    }
    return dispatch(ctx, "selftest", req, response);
  } catch (const std::exception& e) {
    ctx->last_error = std::string("internal error: ") + e.what();
    return FORGE_INTERNAL;
  }
}

}  // extern "C"
