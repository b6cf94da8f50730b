#include "sdgame/types.hpp"

namespace sdgame {

const char* to_string(GameState s) {
    switch (s) {
        case GameState::OmegaPlus: return "omega+";
        case GameState::OmegaMinus: return "omega-";
        case GameState::AbsPlus: return "1*";
        case GameState::AbsMinus: return "-1*";
    }
    return "?";
}

}  // namespace sdgame
