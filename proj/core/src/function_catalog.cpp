#include "skewlab/function_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "skewlab/errors.hpp"

namespace skewlab {

FunctionSpec FunctionSpec::one() { return {Tag::One, "one"}; }

FunctionSpec FunctionSpec::linear() { return {Tag::Linear, "linear"}; }

FunctionSpec FunctionSpec::indicator_left(double ell) {
  if (!std::isfinite(ell)) throw InvalidParams("indicator_left: cutoff must be finite");
  FunctionSpec f{Tag::IndicatorLeft, "indicator_left"};
  f.cutoff_ = ell;
  return f;
}

FunctionSpec FunctionSpec::piecewise_linear(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() < 2 || xs.size() != ys.size())
    throw InvalidParams("piecewise_linear: need >= 2 knots with matching x/y counts");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
      throw InvalidParams("piecewise_linear: knots must be finite");
    if (i > 0 && !(xs[i] > xs[i - 1]))
      throw InvalidParams("piecewise_linear: knot abscissae must be strictly increasing");
  }
  FunctionSpec f{Tag::PiecewiseLinear, "pwl"};
  f.xs_ = std::move(xs);
  f.ys_ = std::move(ys);
  return f;
}

FunctionSpec FunctionSpec::parse(const std::string& text, double ell) {
  if (text == "one") return one();
  if (text == "linear") return linear();
  if (text == "indicator_left") return indicator_left(ell);
  if (text.rfind("pwl:", 0) == 0) {
    std::vector<double> xs, ys;
    std::stringstream points{text.substr(4)};
    std::string point;
    while (std::getline(points, point, ';')) {
      double x = 0, y = 0;
      char comma = 0;
      std::stringstream ss{point};
      if (!(ss >> x >> comma >> y) || comma != ',')
        throw ConfigError("bad pwl knot '" + point + "', expected x,y");
      xs.push_back(x);
      ys.push_back(y);
    }
    return piecewise_linear(std::move(xs), std::move(ys));
  }
  throw ConfigError("unknown function '" + text +
                    "', expected one|linear|indicator_left|pwl:x0,y0;x1,y1;...");
}

double FunctionSpec::operator()(double x) const {
  switch (tag_) {
    case Tag::One:
      return 1.0;
    case Tag::Linear:
      return x;
    case Tag::IndicatorLeft:
      return x <= cutoff_ ? 1.0 : 0.0;
    case Tag::PiecewiseLinear: {
      if (x <= xs_.front()) return ys_.front();
      if (x >= xs_.back()) return ys_.back();
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
      const double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
      return ys_[i - 1] + t * (ys_[i] - ys_[i - 1]);
    }
  }
  return 0.0;  // unreachable
}

}  // namespace skewlab
