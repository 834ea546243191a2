// Copyright 2026 The flowpipe Authors
//
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

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qa/eval.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Score a question answering gateway against a JSONL example set"};
  qa::EvalConfig cfg;
  std::string examples_path, out_dir;
  app.add_option("--gateway", cfg.gateway, "Gateway base URL, e.g. http://127.0.0.1:8080")->required();
  app.add_option("--examples", examples_path, "Examples JSONL")->required();
  app.add_option("--k", cfg.k, "Passages retrieved per question")->required()->check(CLI::NonNegativeNumber);
  app.add_option("--concurrency", cfg.concurrency, "Parallel requests")->capture_default_str()->check(
      CLI::PositiveNumber);
  app.add_option("--entry", cfg.entry)->capture_default_str();
  app.add_option("--out", out_dir, "Write report.json, report.txt and examples.jsonl here");
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(examples_path);
    if (!in) throw std::runtime_error("cannot read " + examples_path);
    const auto examples = qa::load_examples(in);
    const qa::EvalReport report = qa::run_eval(cfg, examples);
    std::cout << qa::report_table(report);
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      std::ofstream(std::filesystem::path(out_dir) / "report.json") << qa::report_json(report);
      std::ofstream(std::filesystem::path(out_dir) / "report.txt") << qa::report_table(report);
      std::ofstream(std::filesystem::path(out_dir) / "examples.jsonl") << qa::dump_jsonl(report);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
