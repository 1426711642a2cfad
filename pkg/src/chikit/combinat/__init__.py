from .perms import Permutation, ShuffleSet, all_permutations, shuffle_words, shuffles
from .maps import (CoordMap, FormalMapSum, compose_sums, cube, cube_action, degeneracy,
                   dif_map, ez_cubical, ez_simplicial, face_map, face_sum, identity_map,
                   identity_sum, lambda_by_degeneracies, lambda_map, phi_map, simplex)
from .ez import verify_co_leibniz, verify_coassoc, verify_ez_diagram
