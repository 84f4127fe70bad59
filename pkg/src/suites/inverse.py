from src.core import verify_inverse_tuple
from src.suites.fixtures import gaussian_pair
from src.suites.manager import Suite


class InverseTuple(Suite):
    """Adjoint inverse against the completed inverse parameter tuple."""

    description = "inverse"

    def run(self):
        f, _ = gaussian_pair(self.config)
        return [verify_inverse_tuple(self.params, f, self.tolerances.inverse_tuple)]
