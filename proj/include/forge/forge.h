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

#ifndef FORGE_FORGE_H
#define FORGE_FORGE_H

#if defined(__GNUC__)
#define FORGE_API __attribute__((visibility("default")))
#else
#define FORGE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum forge_status {
  FORGE_OK = 0,
  FORGE_VIOLATION = 1,
  FORGE_INPUT = 2,
  FORGE_BUDGET = 3,
  FORGE_INTERNAL = 4
} forge_status;

typedef struct forge_context forge_context;

FORGE_API forge_context* forge_context_new(void);
FORGE_API void forge_context_free(forge_context* ctx);

/* Runs one operation on a JSON request. On return *response holds a JSON
   document owned by the caller (release with forge_string_free), or NULL if
   ctx, op or request_json is NULL. */
FORGE_API forge_status forge_run(forge_context* ctx, const char* op, const char* request_json, char** response);

/* Message for the last non-OK status, empty otherwise. Owned by ctx. */
FORGE_API const char* forge_last_error(const forge_context* ctx);

FORGE_API void forge_string_free(char* s);
FORGE_API const char* forge_version(void);

/* Shorthand for the selftest operation. faults may be NULL or a
   comma-separated list. */
FORGE_API forge_status forge_selftest(forge_context* ctx, const char* filter, unsigned long long seed, const char* faults,
                            int threads, char** response);

#ifdef __cplusplus
}
#endif

#endif
