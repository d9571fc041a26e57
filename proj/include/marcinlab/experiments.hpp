// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace marcinlab::cli {

// Exit code contract: 0 success, 2 invalid arguments, 3 numerical-quality
// failure, 4 I/O failure.
enum ExitCode { kOk = 0, kBadArguments = 2, kQualityFailure = 3, kIoFailure = 4 };

struct RunContext {
  std::string command;
  std::string out_dir = ".";
  std::string format = "csv";  // csv | json (json additionally mirrors csv payloads)
  std::uint64_t seed = 1;
  std::map<std::string, std::string> parameters;  // resolved, for the manifest

  // written artifacts in deterministic order
  std::vector<std::string> files;

  void emit(const std::string& name, const std::string& contents);
};

int run_h_estimate(RunContext& ctx);
int run_oracle_check(RunContext& ctx);
int run_counterexample(RunContext& ctx);
int run_band_bound(RunContext& ctx);
int run_lorentz(RunContext& ctx);
int run_lp_decay(RunContext& ctx);
int run_vr_decay(RunContext& ctx);
int run_bilinear_apply(RunContext& ctx);
int run_equivalence(RunContext& ctx);
int run_resynth(RunContext& ctx);
int run_paraproduct(RunContext& ctx);
int run_symbol_h(RunContext& ctx);

// manifest.json with crc32 checksums of every emitted file
void write_manifest(RunContext& ctx, int status, const std::string& error);

}  // namespace marcinlab::cli
