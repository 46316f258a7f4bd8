# This file is part of Twobox
#
# Twobox is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# Twobox is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with Twobox.  If not, see <http://www.gnu.org/licenses/>.


"""Dict tools."""


def override(a: dict, b: dict) -> dict:
    """
    Override dict `a` by `b` values recursively.

    Keys that not exists in `a`, but exists in `b` will be
    appended to `a`. Nested dicts are merged, other values replaced.

    .. code-block:: shell-session

       >>> from twobox.utils import dictutil
       >>> default = {
       ...     'tolerance': {'eq_tol': 1e-9, 'rank_tol': 1e-8},
       ...     'log': {'level': None},
       ... }
       >>> user = {'tolerance': {'eq_tol': 1e-7}, 'search': {'seed': 1}}
       >>> dictutil.override(default, user)
       {'tolerance': {'eq_tol': 1e-07, 'rank_tol': 1e-08},
       'log': {'level': None}, 'search': {'seed': 1}}

    :param a: Dict to be overwritten.
    :param b: A dict whose values will be used to rewrite dict `a`.
    :return: Modified `a` dict.
    """
    for key, value in b.items():
        if isinstance(a.get(key), dict) and isinstance(value, dict):
            override(a[key], value)
        else:
            a[key] = value
    return a
