#pragma once

#include <Eigen/Dense>
#include <string>

namespace lofit {

/// Regression dataset: an n x d covariate matrix and a length-n response.
struct Dataset {
    Eigen::MatrixXd x;  ///< covariates, one row per observation
    Eigen::VectorXd y;  ///< responses

    int n() const { return static_cast<int>(y.size()); }
    int d() const { return static_cast<int>(x.cols()); }
};

/// Reads a dataset from CSV.  Expected layout: a header row naming the
/// columns "x1,...,xd,y" (the response is the last column, any number of
/// covariate columns before it), then one numeric row per observation.
/// Throws domain_error on malformed input.
Dataset read_dataset_csv(const std::string& path);

/// Writes a dataset in the same layout read_dataset_csv() expects.
void write_dataset_csv(const Dataset& data, const std::string& path);

}  // namespace lofit
