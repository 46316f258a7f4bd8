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

"""Utils for creating terminal output."""

__all__ = ['Table', 'format_number']


def format_number(value: complex | float | None, digits: int = 12) -> str:
    """Format real or complex number, None becomes a dash."""
    if value is None:
        return '-'
    value = complex(value)
    scale = max(1.0, abs(value))
    re = value.real if abs(value.real) > 1e-14 * scale else 0.0  # noqa: PLR2004
    im = value.imag if abs(value.imag) > 1e-14 * scale else 0.0  # noqa: PLR2004
    if im == 0:
        return f'{re + 0.0:.{digits}g}'
    return f'{re + 0.0:.{digits}g}{im:+.{digits}g}i'


class Table:
    """Minimalistic text table constructor."""

    def __init__(self, whitespace: str | None = None):
        """Initialise Table."""
        self.whitespace = whitespace or '  '
        self.header = []
        self.rows = []

    def add_row(self, row: list) -> None:
        """Add table row."""
        self.rows.append([str(col) for col in row])

    def add_rows(self, rows: list[list]) -> None:
        """Add multiple rows."""
        for row in rows:
            self.add_row(row)

    def __str__(self) -> str:
        """Return table."""
        rows = list(self.rows)
        if self.header:
            rows.insert(0, [str(h).upper() for h in self.header])
        if not rows:
            return ''
        widths = [max(map(len, col)) for col in zip(*rows, strict=True)]
        return '\n'.join(
            self.whitespace.join(
                val.ljust(width)
                for val, width in zip(row, widths, strict=True)
            ).rstrip()
            for row in rows
        )
