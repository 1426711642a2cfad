from .checks import leibniz_sides, verify_dsq, verify_leibniz, verify_leibniz_random
from .cone import (ConeTriple, FreeDga, FreeDgaElement, chain_map_sides, cone_claim_sides,
                   cone_D, hat_box, homotopy_solution, pairing_P, verify_cone_claim,
                   verify_hat_box_chain_map, verify_homotopy_t, xi)
from .e1 import (Constant, PageReport, c_const, e1_delta, e1_matrix, e1_page, verify_constants,
                 verify_e1_page)
from .model import (BigradedElement, FreeModel, ModelError, ProductModel, box_product, d_part,
                    delta_hat, e1_model, random_element, random_model, total_D)

__all__ = [n for n in dir() if not n.startswith("_")]
