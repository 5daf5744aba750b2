#pragma once

#include <string>

#include "cqlearn/concepts.hpp"
#include "cqlearn/learners.hpp"
#include "cqlearn/qstate.hpp"
#include "cqlearn/sampling.hpp"

namespace cqlearn {

// State file: first line "dim" (an integer, optionally prefixed by the word
// "dim"), then dim rows of dim complex entries in "a+bi" form.
DensityMatrix read_state_file(const std::string& path);
void write_state_file(const std::string& path, const DensityMatrix& rho);
DensityMatrix parse_state_text(const std::string& text);
std::string state_to_text(const DensityMatrix& rho);

// Concept class file: "points" block (id plus optional coordinates per
// line), then "generator <tag>", then explicit 0/1 rows when the tag is
// "explicit".
ConceptClass read_concept_class_file(const std::string& path);
ConceptClass parse_concept_class_text(const std::string& text);
void write_concept_class_file(const std::string& path, const ConceptClass& cls);

// Distribution file: lines "instance-id, bit, probability".
LabeledDistribution read_distribution_file(const std::string& path,
                                           DomainPtr domain);
LabeledDistribution parse_distribution_text(const std::string& text,
                                            DomainPtr domain);
void write_distribution_file(const std::string& path,
                             const LabeledDistribution& mu);

// Hypothesis as an instance -> bit table.
void write_hypothesis_table(const std::string& path, const Hypothesis& h);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cqlearn
