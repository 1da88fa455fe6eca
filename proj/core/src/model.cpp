#include "vlmc/model.hpp"

#include <sstream>

namespace vlmc {

std::string Model::describe() const {
  std::ostringstream os;
  if (is_finite()) {
    os << "finite[h=" << pct().height() << ",contexts=" << pct().tree().size() << "]";
  } else {
    const CombSpec& c = comb();
    os << "comb[q0=" << c.q0 << ",qinf=" << c.qinf << ",gamma=" << c.gamma << "]";
  }
  return os.str();
}

}  // namespace vlmc
