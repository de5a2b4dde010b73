#pragma once

#include <string>

#include <json.hpp>

#include "voxelvol/asymptotics.hpp"
#include "voxelvol/configs.hpp"
#include "voxelvol/estimators.hpp"
#include "voxelvol/experiments.hpp"
#include "voxelvol/imaging.hpp"

namespace voxelvol {

// BVOX: one JSON header line, then the packed bits exactly as stored
// (row-major, last axis fastest, LSB-first, rows padded to whole bytes).
void write_bvox(const std::string& path, const BinaryImage& img);
BinaryImage read_bvox(const std::string& path);

Phantom phantom_from_json(const nlohmann::json& j);
nlohmann::json phantom_to_json(const Phantom& ph);

WeightVector weights_from_json(const nlohmann::json& j, const ClassPartition& part);
nlohmann::json weights_to_json(const WeightVector& wv);

DesignSpec design_from_json(const nlohmann::json& j, const ClassPartition& part);
nlohmann::json design_to_json(const DesignSpec& d);

nlohmann::json classes_to_json(const ClassPartition& part);
std::string classes_to_csv(const ClassPartition& part);

std::string histogram_to_csv(const ConfigHistogram& hist);
std::string coefficients_to_csv(const CoefficientTable& table);

std::string results_to_csv(const ExperimentResult& res);
std::string summary_to_csv(const ExperimentResult& res);
nlohmann::json fit_to_json(const FitResult& fit);

nlohmann::json feasibility_to_json(const LinearSystem& sys, const Feasibility& f);

void write_text_file(const std::string& path, const std::string& content);
nlohmann::json read_json_file(const std::string& path);

}  // namespace voxelvol
