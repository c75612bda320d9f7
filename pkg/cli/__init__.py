"""holoscope command-line front end"""
