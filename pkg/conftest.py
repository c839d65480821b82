import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'RelaySecrecy.settings')
django.setup()
