# (c) 2024 Multiram Project
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# This file is part of Multiram
#
"""
Multiram: Ramsey numbers of disjoint unions at desk scale.
"""

from multiram.version import __version__

#: the active Config object, set by the command line entry point
__config__ = None

__all__ = ['__version__', '__config__']
