# -*- coding: utf-8 -*-

from .errors import *
from .config import *
from .graph import *
from .model import *
from .frost import *
from .svca import *
from .dcbm import *
from .metrics import *
from .generator import *
from .bench import *
