# -*- coding: utf-8 -*-

from .base import *
from .validators import *
from .contexts import *
