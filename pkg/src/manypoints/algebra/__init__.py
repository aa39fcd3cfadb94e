from .abgroup import (INFINITE, Character, FgAbGroup, characters_trivial_on, element_order,
                      group_from_presentation, quotient, subgroup_index, subgroup_order,
                      subgroups_of_index)
from .fields import GF, BaseField, ExtensionField, extension
from .intmat import smith

__all__ = [
    "INFINITE", "Character", "FgAbGroup", "characters_trivial_on", "element_order",
    "group_from_presentation", "quotient", "subgroup_index", "subgroup_order",
    "subgroups_of_index", "GF", "BaseField", "ExtensionField", "extension", "smith",
]
